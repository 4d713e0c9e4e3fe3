#include <doctest.h>

#include "bqsim/config.hpp"

using namespace bqsim;

TEST_CASE("config parses the documented key=value format") {
  const std::string text = R"(
# nonlinear run
dim = 2
N = 512
L = 400
mu = 0.5
p = 5
form = signed
sign = 1
u1_preset = gaussian
u1_amplitude = 0.004
u1_width = 6
u1_shift = 1.0, 0.5
dt = 0.25
t_end = 200
output_times = 2, 20, 200
s = 1
strict = false
seed = 42
)";
  const SimConfig cfg = parse_sim_config(text);
  CHECK(cfg.dim == 2);
  CHECK(cfg.points == 512);
  CHECK(cfg.half_length == 400.0);
  CHECK(cfg.mu == 0.5);
  CHECK(cfg.nonlinearity.p == 5.0);
  CHECK(cfg.nonlinearity.form == NonlinearityForm::signed_power);
  CHECK(cfg.u1.preset == "gaussian");
  CHECK(cfg.u1.amplitude == 0.004);
  CHECK(cfg.u1.width == 6.0);
  CHECK(cfg.u1.shift[0] == 1.0);
  CHECK(cfg.u1.shift[1] == 0.5);
  CHECK(cfg.dt == 0.25);
  CHECK(cfg.t_end == 200.0);
  CHECK(cfg.output_times == std::vector<double>{2.0, 20.0, 200.0});
  CHECK(cfg.seed == 42);
  CHECK_FALSE(cfg.strict);
}

TEST_CASE("config round trips through format/parse") {
  SimConfig cfg;
  cfg.dim = 2;
  cfg.points = 128;
  cfg.half_length = 80.0;
  cfg.mu = 0.25;
  cfg.nonlinearity.p = 4.0;
  cfg.nonlinearity.form = NonlinearityForm::modulus;
  cfg.nonlinearity.sign = -1.0;
  cfg.u1 = DataSpec{"gaussian_x", 0.1, 3.0, {1.0, 0.0, 0.0}};
  cfg.t_end = 50.0;
  cfg.output_times = {5.0, 50.0};
  cfg.seed = 7;

  const SimConfig back = parse_sim_config(format_sim_config(cfg));
  CHECK(back.dim == cfg.dim);
  CHECK(back.points == cfg.points);
  CHECK(back.half_length == cfg.half_length);
  CHECK(back.mu == cfg.mu);
  CHECK(back.nonlinearity.p == cfg.nonlinearity.p);
  CHECK(back.nonlinearity.form == cfg.nonlinearity.form);
  CHECK(back.nonlinearity.sign == cfg.nonlinearity.sign);
  CHECK(back.u1.preset == cfg.u1.preset);
  CHECK(back.u1.amplitude == cfg.u1.amplitude);
  CHECK(back.output_times == cfg.output_times);
  CHECK(back.seed == cfg.seed);
}

TEST_CASE("config rejects unknown keys and bad forms") {
  CHECK_THROWS_AS(parse_sim_config("frobnicate = 3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sim_config("form = cubic"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sim_config("strict = maybe"), std::invalid_argument);
}

TEST_CASE("log spaced output schedules") {
  const SimConfig cfg = parse_sim_config(
      "t_end = 100\noutput_count = 5\noutput_start = 1\n");
  REQUIRE(cfg.output_times.size() == 5);
  CHECK(cfg.output_times.front() == doctest::Approx(1.0));
  CHECK(cfg.output_times.back() == 100.0);
  const auto ls = log_spaced(1.0, 100.0, 5);
  CHECK(ls[2] == doctest::Approx(10.0).epsilon(1e-12));
}
