#include "anisobec/config.hpp"
#include "anisobec/field_io.hpp"
#include "anisobec/regimes.hpp"
#include "anisobec/sweep.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

using namespace anisobec;

namespace {

const char* kGoodConfig = R"(# sample
[species]
name = Rb87

[trap]
omega_T_Hz = 175
omega_L_Hz = 3.5
d = 1

[sweep]
N_min = 0.02
N_max = 0.1
points = 4
units = NT
methods = formula-first-order,variational
)";

bench::RunConfig parse(const std::string& text) {
  std::istringstream is(text);
  return bench::parse_config(is, "test.cfg");
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const char* name)
      : path(std::filesystem::temp_directory_path() / name) {}
  ~TempFile() { std::filesystem::remove(path); }
};

} // namespace

TEST_CASE("field file round trip") {
  Grid g{8, 4, 16, 2.0, 2.0, 8.0};
  std::vector<double> psi(g.size());
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& v : psi)
    v = dist(rng);

  TempFile tmp("anisobec_test_field.bin");
  io::write_field(tmp.path, g, psi, 0xdeadbeefull);
  const auto back = io::read_field(tmp.path);
  CHECK(back.grid.nx == g.nx);
  CHECK(back.grid.ny == g.ny);
  CHECK(back.grid.nz == g.nz);
  CHECK(back.grid.Lz == g.Lz);
  CHECK(back.spec_hash == 0xdeadbeefull);
  REQUIRE(back.psi.size() == psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    CHECK(back.psi[i] == psi[i]); // bit exact

  CHECK_THROWS(io::read_field("/nonexistent/path.bin"));
}

TEST_CASE("verify_field checks norm and symmetry") {
  Grid g{8, 8, 8, 3.0, 3.0, 3.0};
  std::vector<double> psi(g.size());
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      for (int kk = 0; kk < g.nz; ++kk)
        psi[g.index(i, j, kk)] =
            std::exp(-0.5 * (g.x(i) * g.x(i) + g.y(j) * g.y(j) +
                             g.z(kk) * g.z(kk)));
  double nsq = 0.0;
  for (double v : psi)
    nsq += v * v;
  const double scale = 1.0 / std::sqrt(nsq * g.cell_volume());
  for (double& v : psi)
    v *= scale;

  io::FieldFile f{g, 0, psi};
  auto rep = io::verify_field(f);
  CHECK(rep.ok);
  CHECK(rep.norm == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.max_asymmetry < 1e-12);

  f.psi[3] += 0.1;
  CHECK_FALSE(io::verify_field(f).ok);
}

TEST_CASE("config parsing") {
  const auto cfg = parse(kGoodConfig);
  CHECK(cfg.trap.omega_T == doctest::Approx(2.0 * std::numbers::pi * 175.0));
  CHECK(cfg.trap.d == 1);
  CHECK(cfg.points == 4);
  CHECK_FALSE(cfg.range_absolute);
  REQUIRE(cfg.methods.size() == 2);
  CHECK(cfg.methods[0] == bench::Method::FormulaFirstOrder);
  CHECK(cfg.methods[1] == bench::Method::Variational);
}

TEST_CASE("config errors carry line and field diagnostics") {
  using bench::ConfigError;

  // bad number, line 3
  try {
    parse("[trap]\nomega_T_Hz = 175\nomega_L_Hz = fast\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("test.cfg:3") != std::string::npos);
    CHECK(msg.find("omega_L_Hz") != std::string::npos);
  }

  // unknown key
  try {
    parse("[trap]\nomega_tee = 175\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("unknown field") != std::string::npos);
  }

  CHECK_THROWS_AS(parse("[sweep]\nmethods = magic\n"), ConfigError);
  CHECK_THROWS_AS(parse("no equals sign here\n"), ConfigError);
  // no methods at all
  CHECK_THROWS_AS(parse("[sweep]\nN_min = 1\nN_max = 2\n"), ConfigError);
  // nonpositive range
  CHECK_THROWS_AS(
      parse("[sweep]\nmethods = variational\nN_min = -5\nN_max = 2\n"),
      ConfigError);
}

TEST_CASE("config hash tracks semantic fields only") {
  const auto base = parse(kGoodConfig);
  auto changed = parse(kGoodConfig);
  changed.trap.omega_T *= 1.001;
  CHECK(base.hash() != changed.hash());

  auto plumbing = parse(kGoodConfig);
  plumbing.output_path = "elsewhere.csv";
  plumbing.workers = 7;
  plumbing.mem_cap_gib = 1.0;
  CHECK(base.hash() == plumbing.hash());

  auto grid = parse(kGoodConfig);
  grid.nz = 256;
  CHECK(base.hash() != grid.hash());
}

TEST_CASE("sweep N values") {
  auto cfg = parse(kGoodConfig);
  const double NT = 10000.0;
  const auto Ns = bench::sweep_N_values(cfg, NT);
  REQUIRE(Ns.size() == 4);
  CHECK(Ns.front() == doctest::Approx(200.0));
  CHECK(Ns.back() == doctest::Approx(1000.0));
  for (std::size_t i = 1; i < Ns.size(); ++i) {
    CHECK(Ns[i] > Ns[i - 1]);
    // log spacing: constant ratio
    if (i >= 2)
      CHECK(Ns[i] / Ns[i - 1] ==
            doctest::Approx(Ns[i - 1] / Ns[i - 2]).epsilon(1e-10));
  }

  // lower clip at 2
  cfg.N_min = 1e-9;
  CHECK(bench::sweep_N_values(cfg, NT).front() == doctest::Approx(2.0));

  // explicit list wins and is sorted
  cfg.N_list = {50.0, 10.0, 20.0};
  const auto listed = bench::sweep_N_values(cfg, NT);
  CHECK(listed == std::vector<double>{10.0, 20.0, 50.0});
}

TEST_CASE("sweep rows are deterministic and ordered") {
  auto cfg = parse(kGoodConfig);
  const auto rows1 = bench::run_sweep(cfg);
  cfg.workers = 4;
  const auto rows4 = bench::run_sweep(cfg);

  REQUIRE(rows1.size() == 8); // 4 N-points x 2 methods
  REQUIRE(rows4.size() == rows1.size());
  for (std::size_t i = 0; i < rows1.size(); ++i) {
    CHECK(rows1[i].N == rows4[i].N);
    CHECK(rows1[i].method == rows4[i].method);
    REQUIRE(rows1[i].error.empty());
    CHECK(*rows1[i].mu == *rows4[i].mu); // bit equal, formula paths
    CHECK(*rows1[i].purity == *rows4[i].purity);
  }
  for (std::size_t i = 1; i < rows1.size(); ++i) {
    const bool same_N = rows1[i].N == rows1[i - 1].N;
    CHECK((same_N ? to_string(rows1[i - 1].method) <
                        to_string(rows1[i].method)
                  : rows1[i].N > rows1[i - 1].N));
  }
}

TEST_CASE("CSV schema golden header") {
  const auto cfg = parse(kGoodConfig);
  bench::SweepRow row;
  row.N = 200.0;
  row.N_over_NT = 0.02;
  row.method = bench::Method::Variational;
  row.mu = 1.5;
  // N_eta, purity, R_L left unset -> explicit nulls
  std::ostringstream os;
  bench::write_csv(os, cfg, {row});

  std::istringstream lines(os.str());
  std::string l1, l2, l3;
  std::getline(lines, l1);
  std::getline(lines, l2);
  std::getline(lines, l3);
  CHECK(l1.rfind("# anisobec 0.1.0 config_hash=0x", 0) == 0);
  CHECK(l1.size() == std::string("# anisobec 0.1.0 config_hash=0x").size() +
                         16);
  CHECK(l2 == "N,N_over_NT,method,mu_over_hbar_omegaT,N_eta_rho0sq_a,"
              "purity,R_L_over_rho0,runtime_s,error");
  CHECK(l3 == "200,0.02,variational,1.5,null,null,null,0,");
}

TEST_CASE("solver rows respect the memory cap") {
  auto cfg = parse(kGoodConfig);
  cfg.methods = {bench::Method::Solver3D};
  cfg.N_list = {100.0};
  cfg.mem_cap_gib = 1e-6;
  const auto rows = bench::run_sweep(cfg);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].error.empty());
  CHECK(rows[0].error.find("cap") != std::string::npos);
  CHECK_FALSE(rows[0].mu.has_value());
}
