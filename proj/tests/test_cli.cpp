// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "catch.hpp"

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "uccvqe/cli.hpp"

using namespace uccvqe;
namespace fs = std::filesystem;
using Catch::Approx;
using nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "uccvqe");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path out_root() { return fs::path(UCCVQE_TEST_OUT); }

fs::path fresh_dir(const std::string& name) {
  const fs::path d = out_root() / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

json load_json(const fs::path& p) { return json::parse(slurp(p)); }

std::string fixture(const std::string& mol, std::size_t idx) { return fixtures::grid(mol)[idx].fcidump.string(); }

}  // namespace

TEST_CASE("vqe on H2 reaches FCI and writes result, CSV and stdout") {
  const fs::path dir = fresh_dir("h2_plain");
  const Outcome o = run_cli({"vqe", fixture("H2", 3), "--method", "plain", "--out-dir", dir.string()});
  REQUIRE(o.code == cli::kOk);
  const json r = load_json(dir / "result.json");
  CHECK(r["e_vqe"].get<double>() == Approx(r["e_fci"].get<double>()).margin(1e-8));
  CHECK(r["label"] == "H2");
  CHECK(r["n_params_initial"] == 3);
  CHECK(r["method"] == "plain");
  CHECK(r["converged"] == true);
  const auto csv = lines(dir / "results.csv");
  REQUIRE(csv.size() == 2);
  CHECK(csv[0] == cli::kCsvHeader);
  CHECK(std::count(csv[1].begin(), csv[1].end(), ',') == 9);
  CHECK(csv[1].rfind("H2,", 0) == 0);
  CHECK(o.out.find("E_vqe=") != std::string::npos);

  CHECK(run_cli({"vqe", fixture("H2", 4), "--method", "plain", "--out-dir", dir.string()}).code == cli::kOk);
  CHECK(lines(dir / "results.csv").size() == 3);
}

TEST_CASE("vqe on H2O counts 140 parameters without reductions") {
  const fs::path dir = fresh_dir("h2o_plain");
  const Outcome o = run_cli({"vqe", fixture("H2O", 4), "--method", "plain", "--out-dir", dir.string()});
  REQUIRE(o.code == cli::kOk);
  const json r = load_json(dir / "result.json");
  CHECK(r["n_params_initial"] == 140);
  CHECK(r["n_params_final"] == 140);
  CHECK(r["e_vqe"].get<double>() >= r["e_fci"].get<double>() - 1e-10);
}

TEST_CASE("freezing shrinks the problem") {
  const fs::path dir = fresh_dir("h2o_frozen");
  const Outcome o =
      run_cli({"vqe", fixture("H2O", 4), "--method", "plain", "--freeze-k", "2", "--out-dir", dir.string()});
  REQUIRE(o.code == cli::kOk);
  const json r = load_json(dir / "result.json");
  CHECK(r["frozen_orbitals"].size() == 2);
  CHECK(r["frozen_orbitals"][0] == 0);
  CHECK(r["n_params_initial"] == 54);
  CHECK(r["e_vqe"].get<double>() >= r["e_fci"].get<double>() - 1e-10);
  CHECK(run_cli({"vqe", fixture("H2O", 4), "--freeze-k", "1", "--freeze-eta", "0.1"}).code == cli::kInputError);
}

TEST_CASE("input errors exit 1 without a CSV row") {
  const fs::path dir = fresh_dir("missing");
  const Outcome o = run_cli({"vqe", (dir / "nope.fcidump").string(), "--out-dir", dir.string()});
  CHECK(o.code == cli::kInputError);
  CHECK(o.err.find("cannot open") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "results.csv"));

  {
    std::ofstream bad(dir / "bad.fcidump");
    bad << "&FCI NORB=2,NELEC=2\n&END\n0.5 1 1 x 1\n";
  }
  const Outcome b = run_cli({"vqe", (dir / "bad.fcidump").string(), "--out-dir", dir.string()});
  CHECK(b.code == cli::kInputError);
  CHECK(b.err.find("line 3") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "results.csv"));

  CHECK(run_cli({"vqe"}).code == cli::kInputError);
  CHECK(run_cli({"vqe", fixture("H2", 0), "--method", "bogus"}).code == cli::kInputError);
  CHECK(run_cli({"vqe", fixture("H2", 0), "--kappa", "1", "--out-dir", dir.string()}).code == cli::kInputError);
  CHECK(run_cli({"--help"}).code == cli::kOk);
}

TEST_CASE("oversized systems exit 2") {
  const fs::path dir = fresh_dir("capacity");
  IntegralSet big(9, 2);
  for (int p = 0; p < 9; ++p) big.set_h1(p, p, -1.0 + 0.1 * p);
  big.set_h2(0, 0, 1, 1, 0.1);
  {
    std::ofstream f(dir / "big.fcidump");
    f << write_fcidump(big);
  }
  const Outcome o = run_cli({"vqe", (dir / "big.fcidump").string(), "--out-dir", dir.string()});
  CHECK(o.code == cli::kCapacityError);
  CHECK(o.err.find("qubit") != std::string::npos);
}

TEST_CASE("iteration limits exit 3") {
  const fs::path dir = fresh_dir("nonconv");
  const Outcome o =
      run_cli({"vqe", fixture("LiH", 5), "--method", "sa", "--max-iterations", "1", "--out-dir", dir.string()});
  CHECK(o.code == cli::kNonConvergence);
  CHECK(o.err.find("not converged") != std::string::npos);
  CHECK(load_json(dir / "result.json")["converged"] == false);
}

TEST_CASE("reruns are byte-identical apart from wall time") {
  std::vector<std::string> texts;
  for (const std::string name : {"rerun_a", "rerun_b"}) {
    const fs::path dir = fresh_dir(name);
    REQUIRE(run_cli({"vqe", fixture("LiH", 7), "--method", "sa-saf", "--out-dir", dir.string()}).code == cli::kOk);
    json r = load_json(dir / "result.json");
    r.erase("wall_time_s");
    texts.push_back(r.dump(2));
  }
  CHECK(texts[0] == texts[1]);
}

TEST_CASE("config files set defaults and flags win") {
  const fs::path dir = fresh_dir("config");
  {
    std::ofstream f(dir / "run.toml");
    f << "method = \"sa-saf\"\nkappa = 3\neps1 = 0.0005\nmax-iterations = 1\n";
  }
  const Outcome o = run_cli({"--config", (dir / "run.toml").string(), "vqe", fixture("LiH", 4), "--max-iterations",
                             "300", "--out-dir", dir.string()});
  REQUIRE(o.code == cli::kOk);
  const json r = load_json(dir / "result.json");
  CHECK(r["method"] == "sa-saf");
  CHECK(r["options"]["kappa"] == 3);
  CHECK(r["options"]["eps1"] == 0.0005);
  CHECK(r["options"]["max_iterations"] == 300);
}

TEST_CASE("ML method writes the regression model") {
  const fs::path dir = out_root() / "schema";
  fs::create_directories(dir);
  fs::remove(dir / "results.csv");
  const Outcome o = run_cli({"vqe", fixture("LiH", 6), "--method", "ml", "--out-dir", dir.string()});
  REQUIRE(o.code == cli::kOk);
  const json m = load_json(dir / "ml_model.json");
  CHECK(m["kernel"]["kind"] == "poly");
  CHECK(m["kernel"]["degree"] == 3);
  const json r = load_json(dir / "result.json");
  CHECK(r["options"]["ml_n"] == 4);
  CHECK(r["n_params_final"] == 16);
}

TEST_CASE("scan runs every manifest row and method") {
  const fs::path dir = out_root() / "schema";
  fs::create_directories(dir);
  const auto grid = fixtures::grid("H2");
  {
    std::ofstream m(dir / "manifest.csv");
    m << "label,bond_length,fcidump_path\n";
    for (std::size_t k : {std::size_t{5}, std::size_t{1}, std::size_t{3}})
      m << "H2," << grid[k].bond_length << ',' << grid[k].fcidump.string() << '\n';
    m << "LiH," << fixtures::grid("LiH")[2].bond_length << ',' << fixtures::grid("LiH")[2].fcidump.string() << '\n';
  }
  const Outcome o = run_cli({"scan", (dir / "manifest.csv").string(), "--method", "plain", "--method", "sa",
                             "--workers", "2", "--only", "H2", "--out-dir", dir.string()});
  REQUIRE(o.code == cli::kOk);
  for (const std::string m : {"plain", "sa"}) {
    const auto csv = lines(dir / ("scan_" + m + ".csv"));
    REQUIRE(csv.size() == 4);
    CHECK(csv[0] == cli::kCsvHeader);
    std::vector<double> bonds;
    for (std::size_t k = 1; k < csv.size(); ++k) bonds.push_back(std::stod(csv[k].substr(csv[k].find(',') + 1)));
    CHECK(std::is_sorted(bonds.begin(), bonds.end()));
  }
  const json s = load_json(dir / "scan_summary.json");
  REQUIRE(s["points"].size() == 3);
  for (const auto& p : s["points"]) {
    CHECK(std::abs(p["differences"]["sa_minus_plain"].get<double>()) < 1e-8);
    CHECK(std::abs(p["differences"]["plain_minus_fci"].get<double>()) < 1e-8);
  }
  CHECK(s["failures"].empty());
}

TEST_CASE("scan of an empty manifest succeeds with empty tables") {
  const fs::path dir = fresh_dir("empty_scan");
  {
    std::ofstream m(dir / "manifest.csv");
    m << "label,bond_length,fcidump_path\n";
  }
  const Outcome o = run_cli({"scan", (dir / "manifest.csv").string(), "--out-dir", dir.string()});
  CHECK(o.code == cli::kOk);
  CHECK(lines(dir / "scan_sa-saf.csv") == std::vector<std::string>{cli::kCsvHeader});
  CHECK(load_json(dir / "scan_summary.json")["points"].empty());
}

TEST_CASE("scan records failing rows and keeps going") {
  const fs::path dir = fresh_dir("scan_fail");
  {
    std::ofstream m(dir / "manifest.csv");
    m << "label,bond_length,fcidump_path\n";
    m << "H2,0.7,missing.fcidump\n";
    m << "H2," << fixtures::grid("H2")[2].bond_length << ',' << fixtures::grid("H2")[2].fcidump.string() << '\n';
  }
  const Outcome o = run_cli({"scan", (dir / "manifest.csv").string(), "--out-dir", dir.string()});
  CHECK(o.code == cli::kInputError);
  const json s = load_json(dir / "scan_summary.json");
  CHECK(s["points"].size() == 1);
  REQUIRE(s["failures"].size() == 1);
  CHECK(s["failures"][0]["exit_code"] == 1);
  CHECK(lines(dir / "scan_sa-saf.csv").size() == 2);
}

TEST_CASE("entropy command recommends frozen orbitals") {
  const fs::path dir = out_root() / "schema";
  fs::create_directories(dir);
  const Outcome o = run_cli({"entropy", fixture("H2O", 4), "--freeze-k", "2", "--out-dir", dir.string()});
  REQUIRE(o.code == cli::kOk);
  CHECK(o.out.find("freeze {0, ") != std::string::npos);
  CHECK(o.out.find("14 → 10 qubits, 140 → 54 parameters") != std::string::npos);
  const auto csv = lines(dir / "entropy.csv");
  CHECK(csv[0] == "bond_length,orbital_index,entropy,source");
  CHECK(csv.size() == 1 + 2 * 7);

  const Outcome none = run_cli({"entropy", fixture("H2O", 4), "--freeze-k", "0", "--source", "mp2", "--out-dir",
                                (out_root() / "entropy_none").string()});
  CHECK(none.code == cli::kOk);
  CHECK(none.out.find("no freeze recommendation") != std::string::npos);
}

TEST_CASE("fci command") {
  const fs::path dir = fresh_dir("fci");
  const auto pt = fixtures::grid("LiH")[3];
  const Outcome o = run_cli({"fci", pt.fcidump.string(), "--out-dir", dir.string()});
  REQUIRE(o.code == cli::kOk);
  const json j = load_json(dir / "fci.json");
  CHECK(j[0]["e_fci"].get<double>() == Approx(pt.meta["e_fci"].get<double>()).margin(1e-8));
}
