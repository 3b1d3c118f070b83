#include "fixtures.hpp"

#include "qdm/config_file.hpp"
#include "qdm/numeric.hpp"
#include "qdm/trajectory_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

using namespace qdm;
using namespace qdm::testing;

namespace {

const std::filesystem::path kData{QDM_TEST_DATA_DIR};

std::string minimal(const std::string& extra) {
  return "[dots]\ndot1 = 1, 0\n[modes]\nmode1 = 1\n" + extra;
}

}  // namespace

TEST(ConfigFile, TwinDotFileMatchesFixture) {
  const auto file = load_config(kData / "twin_dots.ini");
  EXPECT_EQ(validate(file.system), validate(twin_dot_config()));
  EXPECT_EQ(file.simulation.solver, "euler");
  EXPECT_DOUBLE_EQ(file.simulation.dt, 5e-18);
  EXPECT_DOUBLE_EQ(file.simulation.t_end, 1e-13);
  EXPECT_EQ(file.simulation.output_stride, 20u);
  EXPECT_EQ(file.simulation.spectrum_label, "A11_F00");
}

TEST(ConfigFile, DipoleAndConcurrenceFilesMatchFixtures) {
  EXPECT_EQ(validate(load_config(kData / "dipole.ini").system).couplings(), validate(dipole_config(3)).couplings());
  const auto conc = load_config(kData / "concurrence.ini");
  EXPECT_EQ(conc.simulation.concurrence_n_max, 3);
  const auto a = validate(shell_config(conc.system, 2));
  const auto b = validate(shell_config(concurrence_config(), 2));
  for (int n = 0; n < 2; ++n) {
    EXPECT_NEAR(std::abs(a.couplings().eta_at(n, 0, 1) - b.couplings().eta_at(n, 0, 1)), 0.0, 1e-6);
    EXPECT_EQ(a.couplings().g_at(n, 0, 1, 1), b.couplings().g_at(n, 0, 1, 1));
  }
}

TEST(ConfigFile, ComplexValuesAndIndices) {
  const auto f = parse_config(minimal("[couplings]\ng[1][1][2][1] = 0.5, -0.25\ngamma[1][1][2] = 2\n"));
  EXPECT_EQ(f.system.couplings.g.at(FieldKey{0, 0, 1, 0}), (Complex{0.5, -0.25}));
  EXPECT_EQ(f.system.couplings.gamma.at(TransitionKey{0, 0, 1}), Complex{2.0});
}

TEST(ConfigFile, InitialLabelsAreOneBased) {
  const auto f = parse_config(minimal("[initial]\nA2_F3 = 0, 1\n"));
  ASSERT_EQ(f.system.initial_state.size(), 1u);
  EXPECT_EQ(f.system.initial_state[0].levels, std::vector<int>{1});
  EXPECT_EQ(f.system.initial_state[0].photons, std::vector<int>{3});
  EXPECT_EQ(f.system.initial_state[0].amplitude, (Complex{0.0, 1.0}));
}

TEST(ConfigFile, Errors) {
  EXPECT_THROW(parse_config(minimal("[weird]\nx = 1\n")), ConfigError);
  EXPECT_THROW(parse_config(minimal("[system]\nunits = furlongs\n")), ConfigError);
  EXPECT_THROW(parse_config(minimal("[system]\nexcitation_cap = two\n")), ConfigError);
  EXPECT_THROW(parse_config(minimal("[couplings]\ng[1][1][2] = 1\n")), ConfigError);
  EXPECT_THROW(parse_config(minimal("[couplings]\ngamma[0][1][2] = 1\n")), ConfigError);
  EXPECT_THROW(parse_config(minimal("[couplings]\ngamma[1][1][2] = 1, 2, 3\n")), ConfigError);
  EXPECT_THROW(parse_config(minimal("[initial]\nZ11 = 1\n")), ConfigError);
  EXPECT_THROW(parse_config(minimal("[simulation]\nsolver = magic\n")), ConfigError);
  EXPECT_THROW(parse_config(minimal("[simulation]\noutput_stride = 0\n")), ConfigError);
  EXPECT_THROW(parse_config("[dots]\ndot2 = 1, 0\n[modes]\nmode1 = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("[dots]\ndot1 = 1, 0\ndot1 = 2, 0\n"), ConfigError);
  EXPECT_THROW(parse_config("no section = 1\n"), ConfigError);
  EXPECT_THROW(load_config(kData / "does_not_exist.ini"), ConfigError);
  // Parsing does not validate; ordering is checked by validate().
  EXPECT_THROW(validate(parse_config("[dots]\ndot1 = 0, 1\n[modes]\nmode1 = 1\n").system), ConfigError);
}

TEST(TrajectoryCsv, HeaderAndExactRoundTrip) {
  const auto c = compile(twin_dot_config());
  const auto traj = integrate_rk4(c.system, initial_state(c.system), IntegratorSpec{Method::rk4, 1e-17, 1e-15, 25});
  std::stringstream buffer;
  write_trajectory_csv(buffer, traj);
  std::string header;
  std::getline(std::stringstream(buffer.str()), header);
  EXPECT_EQ(header.rfind("t,A11_F00_re,A11_F00_im,A11_F00_abs,", 0), 0u);
  EXPECT_EQ(header.substr(header.size() - 5), ",norm");
  const auto back = read_trajectory_csv(buffer);
  EXPECT_EQ(back.labels, traj.labels);
  EXPECT_EQ(back.times, traj.times);
  EXPECT_EQ(back.states, traj.states);
}

TEST(TrajectoryCsv, MalformedInput) {
  std::stringstream empty;
  EXPECT_THROW(read_trajectory_csv(empty), std::runtime_error);
  std::stringstream bad("t,x,norm\n");
  EXPECT_THROW(read_trajectory_csv(bad), std::runtime_error);
  std::stringstream width("t,A1_F0_re,A1_F0_im,A1_F0_abs,norm\n0,1,0\n");
  EXPECT_THROW(read_trajectory_csv(width), std::runtime_error);
}
