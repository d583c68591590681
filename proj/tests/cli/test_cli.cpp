#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "commands.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "table.hpp"

namespace fs = std::filesystem;
using namespace mwgcli;

namespace {

const char* kBeam =
    "[beam]\n"
    "power_w = 1.0\n"
    "waist_y_um = 900\n"
    "waist_z_um = 20\n"
    "wavelength_nm = 532\n"
    "alpha_a3 = 100\n"
    "sigma_abs_m2 = 1.7e-21\n"
    "velocity_m_per_s = 200\n"
    "mass_amu = 720\n"
    "[interferometer]\n"
    "separation_m = 0.105\n"
    "[kdtli]\n"
    "shifts = 32\n";

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("mwg_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::map<std::string, std::string> files_in(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = slurp(e.path());
  return out;
}

fs::path write_config(const std::string& name, const std::string& text) {
  fs::path p = scratch(name);
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
  return p;
}

RunOptions options(const std::string& command, const std::string& out) {
  RunOptions o;
  o.command = command;
  o.out_dir = scratch(out).string();
  o.jobs = 1;
  return o;
}

// Every cell survives CSV output and the schema parser.
void check_round_trip(const Table& t) {
  std::ostringstream s;
  write_csv(t, s);
  std::istringstream in(s.str());
  Table back = read_csv(in);
  CHECK(back.metadata == t.metadata);
  REQUIRE(back.columns == t.columns);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    REQUIRE(back.rows[r].size() == t.rows[r].size());
    for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
      const Cell& a = t.rows[r][c];
      const Cell& b = back.rows[r][c];
      if (std::holds_alternative<std::string>(a)) {
        CHECK(b == a);
      } else if (std::holds_alternative<long long>(a)) {
        CHECK(b == a);
      } else {
        // Integral doubles come back as integers.
        double v = std::get<double>(a);
        double w = std::holds_alternative<double>(b) ? std::get<double>(b)
                                                     : static_cast<double>(std::get<long long>(b));
        if (std::isnan(v))
          CHECK(std::isnan(w));
        else
          CHECK(v == w);
      }
    }
  }
}

}  // namespace

TEST_CASE("format_number is shortest round-trip") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0, -0.0, 1e21, 123456789.0}) {
    std::string s = format_number(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(2.0) == "2");
}

TEST_CASE("csv quotes strings that look numeric") {
  Table t;
  t.name = "t";
  t.metadata = {{"generator", "mwg"}, {"note", "a, b"}};
  t.columns = {"label", "x", "n"};
  t.add_row({std::string("1"), 0.25, 3LL});
  t.add_row({std::string("sum"), -1e-12, -4LL});
  t.add_row({std::string("with \"quote\", comma"), 1e300, 0LL});
  check_round_trip(t);
  std::ostringstream s;
  write_csv(t, s);
  CHECK(s.str().find("\"1\",0.25,3") != std::string::npos);
}

TEST_CASE("read_csv rejects ragged rows") {
  std::istringstream in("a,b\n1,2\n3\n");
  CHECK_THROWS(read_csv(in));
}

TEST_CASE("every command table round-trips through the schema parser") {
  Config beam = Config::from_string(kBeam);
  Config plain;
  plain.set("talbot.xi_points", "21");
  plain.set("kdtli.shifts", "32");
  plain.set("farfield.screen_points", "241");
  plain.set("ladder.x_points", "11");
  plain.set("grating.n0", "1.5");
  plain.set("grating.eta_p", "1.5");
  plain.set("rabi.pulse_area_rad", "6.283185307179586");

  struct Case {
    std::string command;
    const Config* config;
    std::string ell;
    std::vector<std::string> tables;
  };
  std::vector<Case> cases = {
      {"derive-params", &beam, "", {"parameters"}},
      {"talbot", &plain, "all", {"talbot"}},
      {"kdtli", &plain, "all", {"kdtli_signal", "kdtli_harmonics", "kdtli_visibility"}},
      {"kdtli", &beam, "sum", {"kdtli_signal", "kdtli_harmonics", "kdtli_visibility"}},
      {"farfield", &plain, "all", {"farfield"}},
      {"ladder", &plain, "", {"ladder_diagonal", "ladder_visibility"}},
      {"rabi", &plain, "", {"rabi_populations", "rabi_signal", "rabi_harmonics", "rabi_visibility"}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.command);
    RunOptions o = options(c.command, "rt");
    o.ell = c.ell;
    RunResult r = execute(o, *c.config);
    std::vector<std::string> names;
    for (const auto& t : r.tables) names.push_back(t.name);
    CHECK(names == c.tables);
    for (const auto& t : r.tables) {
      CAPTURE(t.name);
      CHECK(!t.rows.empty());
      check_round_trip(t);
    }
  }
}

TEST_CASE("figure tables round-trip through the schema parser") {
  for (std::string fig : {"1", "2", "6"}) {
    CAPTURE(fig);
    RunOptions o = options("figure", "fig");
    o.figure = fig;
    RunResult r = execute(o, Config{});
    CHECK(!r.tables.empty());
    CHECK(!r.scripts.empty());
    for (const auto& t : r.tables) check_round_trip(t);
  }
}

TEST_CASE("empty sweep is a single-point run") {
  Config c;
  c.set("talbot.xi_points", "5");
  RunOptions o = options("talbot", "single");
  RunResult r = execute(o, c);
  REQUIRE(r.tables.size() == 1);
  CHECK(r.sweeps.empty());
  CHECK(r.tables[0].columns.front() != "point");
  CHECK(r.tables[0].rows.size() == 5u * 33u);
}

TEST_CASE("sweep rows follow input order with point and key columns") {
  Config c;
  c.set("talbot.xi_points", "3");
  c.set("talbot.jmax", "2");
  RunOptions o = options("talbot", "sweep");
  o.sweeps = {"grating.n0=0:2:3", "grating.phi0_rad=1:2:2"};
  RunResult r = execute(o, c);
  const Table& t = r.tables.at(0);
  REQUIRE(t.columns.size() >= 3);
  CHECK(t.columns[0] == "point");
  CHECK(t.columns[1] == "grating.n0");
  CHECK(t.columns[2] == "grating.phi0_rad");
  std::size_t per_point = t.rows.size() / 6;
  REQUIRE(per_point * 6 == t.rows.size());
  for (std::size_t p = 0; p < 6; ++p) {
    const auto& row = t.rows[p * per_point];
    CHECK(std::get<long long>(row[0]) == static_cast<long long>(p));
    CHECK(std::get<double>(row[1]) == doctest::Approx(static_cast<double>(p / 2)));
    CHECK(std::get<double>(row[2]) == doctest::Approx(1.0 + static_cast<double>(p % 2)));
  }
}

TEST_CASE("outputs are byte-identical across runs and worker counts") {
  Config c = Config::from_string(kBeam);
  auto run_with = [&](const std::string& dir, int jobs) {
    RunOptions o = options("kdtli", dir);
    o.ell = "all";
    o.jobs = jobs;
    o.sweeps = {"beam.velocity_m_per_s=150:250:5"};
    write_outputs(o, execute(o, c));
    return files_in(o.out_dir);
  };
  auto a = run_with("det_a", 1);
  auto b = run_with("det_b", 1);
  auto d = run_with("det_c", 3);
  CHECK(a.size() == 4);
  CHECK(a == b);
  CHECK(a == d);

  Config r;
  r.set("rabi.pulse_area_rad", "6.283185307179586");
  auto rabi_with = [&](const std::string& dir, int jobs) {
    RunOptions o = options("rabi", dir);
    o.jobs = jobs;
    o.format = "json";
    write_outputs(o, execute(o, r));
    return files_in(o.out_dir);
  };
  CHECK(rabi_with("rabi_a", 1) == rabi_with("rabi_b", 4));
}

TEST_CASE("velocity sweep maps to the Talbot ratio") {
  Config c = Config::from_string(kBeam);
  RunOptions o = options("kdtli", "vsweep");
  o.ell = "sum";
  o.sweeps = {"beam.velocity_m_per_s=100:200:2"};
  RunResult r = execute(o, c);
  const Table* vis = nullptr;
  for (const auto& t : r.tables)
    if (t.name == "kdtli_visibility") vis = &t;
  REQUIRE(vis != nullptr);
  REQUIRE(vis->rows.size() == 2);
  std::size_t col = vis->column("talbot_ratio");
  double slow = std::get<double>(vis->rows[0][col]);
  double fast = std::get<double>(vis->rows[1][col]);
  // L/L_T scales as v at fixed separation.
  CHECK(slow / fast == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("velocity sweep manifest matches the golden") {
  Config c = Config::from_string(kBeam);
  RunOptions o = options("kdtli", "vgolden");
  o.ell = "all";
  o.sweeps = {"beam.velocity_m_per_s=150:250:3"};
  write_outputs(o, execute(o, c));
  fs::path golden = fs::path(MWG_GOLDEN_DIR) / "cli_velocity_sweep";
  auto produced = files_in(o.out_dir);
  auto expected = files_in(golden);
  REQUIRE(!expected.empty());
  CHECK(produced.size() == expected.size());
  for (const auto& [name, bytes] : expected) {
    CAPTURE(name);
    REQUIRE(produced.count(name) == 1);
    CHECK(produced[name] == bytes);
  }
}

TEST_CASE("exit codes") {
  SUBCASE("unknown config key") {
    RunOptions o = options("talbot", "e1");
    o.config_path = write_config("bad.ini", "[grating]\nfoo = 1\n").string();
    CHECK(run(o) == exit_config);
  }
  SUBCASE("invalid value") {
    RunOptions o = options("talbot", "e2");
    o.config_path = write_config("neg.ini", "[grating]\nn0 = -1\n").string();
    CHECK(run(o) == exit_config);
  }
  SUBCASE("sweep over an unused key") {
    RunOptions o = options("talbot", "e3");
    o.sweeps = {"rabi.detuning_tl=0:1:2"};
    CHECK(run(o) == exit_config);
  }
  SUBCASE("malformed sweep") {
    RunOptions o = options("talbot", "e4");
    o.sweeps = {"grating.n0=0:1"};
    CHECK(run(o) == exit_config);
  }
  SUBCASE("figure with sweep") {
    RunOptions o = options("figure", "e5");
    o.figure = "1";
    o.sweeps = {"grating.n0=0:1:2"};
    CHECK(run(o) == exit_config);
  }
  SUBCASE("unknown figure") {
    RunOptions o = options("figure", "e6");
    o.figure = "3";
    CHECK(run(o) == exit_config);
  }
  SUBCASE("short-lifetime regime violated") {
    RunOptions o = options("rabi", "e7");
    o.config_path = write_config("regime.ini", "[rabi]\nlifetime_tl = 0\n").string();
    CHECK(run(o) != exit_ok);
  }
  SUBCASE("detector resolution too fine for the screen grid") {
    RunOptions o = options("farfield", "e8");
    o.config_path = write_config("res.ini", "[farfield]\nsigma_det_dx = 0.001\n").string();
    CHECK(run(o) == exit_regime);
  }
  SUBCASE("missing config file") {
    RunOptions o = options("talbot", "e9");
    o.config_path = (scratch("missing") / "none.ini").string();
    CHECK(run(o) == exit_io);
  }
  SUBCASE("unwritable output directory") {
    fs::path blocker = write_config("blocker", "x");
    RunOptions o = options("talbot", "e10");
    o.out_dir = (blocker / "sub").string();
    CHECK(run(o) == exit_io);
  }
  SUBCASE("success") {
    RunOptions o = options("derive-params", "ok");
    o.config_path = write_config("beam.ini", kBeam).string();
    CHECK(run(o) == exit_ok);
    CHECK(fs::exists(fs::path(o.out_dir) / "manifest.json"));
    CHECK(fs::exists(fs::path(o.out_dir) / "parameters.csv"));
  }
}
