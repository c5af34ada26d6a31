#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fnlw/commands.hpp"
#include "fnlw/config.hpp"
#include "fnlw/csv.hpp"
#include "fnlw/error.hpp"
#include "fnlw/initdata.hpp"
#include "fnlw/integrator.hpp"
#include "fnlw/snapshot_io.hpp"
#include "oracles.hpp"

using namespace fnlw;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("fnlw_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

struct Streams {
  std::ostringstream out, err;
};

const char* kSmallSweep = R"({"preset": "deterministic_wp", "k_min": 3, "k_max": 6, "t_s": 0.001, "snapshots": 4})";

}  // namespace

TEST_CASE("cmd_run: minimal config writes three files") {
  TempDir dir;
  write_file(dir / "c.json", R"({"N": 8, "M": 64, "snapshots": 5, "t_s": 0.001})");
  Streams io;
  CHECK(cmd_run(dir / "c.json", dir / "out", false, io.out, io.err) == kExitOk);
  CHECK(fs::exists(dir / "out/manifest.json"));
  CHECK(fs::exists(dir / "out/timeseries.csv"));
  CHECK(fs::exists(dir / "out/snapshots.bin"));
  CHECK(std::distance(fs::directory_iterator(dir.path / "out"), fs::directory_iterator{}) == 3);

  const std::string csv = read_text_file(dir / "out/timeseries.csv");
  CHECK(csv.rfind("step,time,sobolev_pair_norm,hamiltonian\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  CHECK(read_snapshots(dir / "out/snapshots.bin").size() == 2);
}

TEST_CASE("cmd_run: alpha <= 1/2 is rejected naming the field") {
  TempDir dir;
  write_file(dir / "c.json", R"({"alpha": 0.4, "N": 8, "M": 64})");
  Streams io;
  CHECK(cmd_run(dir / "c.json", dir / "out", false, io.out, io.err) == kExitInvalid);
  CHECK(io.err.str().find("alpha") != std::string::npos);
}

TEST_CASE("cmd_run: field-level errors") {
  TempDir dir;
  Streams io;
  write_file(dir / "a.json", R"({"N": 8, "M": 64, "bogus": 1})");
  CHECK(cmd_run(dir / "a.json", dir / "out", false, io.out, io.err) == kExitInvalid);
  CHECK(io.err.str().find("bogus") != std::string::npos);
  write_file(dir / "b.json", R"({"N": "eight"})");
  CHECK(cmd_run(dir / "b.json", dir / "out", false, io.out, io.err) == kExitInvalid);
  CHECK(io.err.str().find("N: expected an integer") != std::string::npos);
  write_file(dir / "c.json", R"({"N": 8, "M": 60})");
  CHECK(cmd_run(dir / "c.json", dir / "out", false, io.out, io.err) == kExitInvalid);
  CHECK(io.err.str().find("M:") != std::string::npos);
  write_file(dir / "d.json", R"({"N": 8, )");
  CHECK(cmd_run(dir / "d.json", dir / "out", false, io.out, io.err) == kExitInvalid);
  CHECK(cmd_run(dir / "missing.json", dir / "out", false, io.out, io.err) == kExitIo);
}

TEST_CASE("cmd_run: reruns and manifest replays are byte-identical") {
  TempDir dir;
  write_file(dir / "c.json", R"({"N": 16, "M": 256, "snapshots": 8, "kind": "pathological", "seed": 9})");
  Streams io;
  REQUIRE(cmd_run(dir / "c.json", dir / "a", true, io.out, io.err) == kExitOk);
  REQUIRE(cmd_run(dir / "c.json", dir / "b", true, io.out, io.err) == kExitOk);
  REQUIRE(cmd_run(dir / "a/manifest.json", dir / "m", true, io.out, io.err) == kExitOk);
  const std::string a = read_text_file(dir / "a/timeseries.csv");
  CHECK(a == read_text_file(dir / "b/timeseries.csv"));
  CHECK(a == read_text_file(dir / "m/timeseries.csv"));
  CHECK(read_text_file(dir / "a/snapshots.bin") == read_text_file(dir / "m/snapshots.bin"));
  CHECK(read_text_file(dir / "a/manifest.json") == read_text_file(dir / "m/manifest.json"));

  const auto manifest = nlohmann::json::parse(read_text_file(dir / "a/manifest.json"));
  CHECK(manifest.at("version") == std::string(kToolVersion));
  CHECK(manifest.at("derived").at("steps").get<std::int64_t>() > 0);
  CHECK(manifest.at("config_checksum") == config_checksum(run_config_from_json(manifest)));
  CHECK(manifest.at("files").size() == 3);
}

TEST_CASE("run config: defaults and s from the regime rule") {
  const ModelParams p = parse_run_config(R"({"alpha": 0.98, "beta": 0.125, "N": 8, "M": 64})");
  CHECK(p.s == doctest::Approx(0.4275).epsilon(1e-14));
  CHECK(p.seed == kDefaultSeed);
  CHECK(parse_run_config(R"({"N": 8, "M": 64, "s": 0.2})").s == 0.2);
}

TEST_CASE("property: config round trips are the identity") {
  ModelParams p;
  p.alpha = 0.61234567890123;
  p.beta = 1.0 / 7.0;
  p.s = 0.1 / 3.0;
  p.N = 12;
  p.M = 128;
  p.t_s = 3e-3;
  p.tau = 1e-4;
  p.tau_factor = 0.5;
  p.a = 3.3;
  p.seed = 0xfedcba9876543210ULL;
  p.kind = DataKind::pathological;
  p.snapshots = 3;
  p.nonlinear = false;
  const ModelParams q = parse_run_config(to_json(p).dump());
  CHECK(q == p);
  CHECK(to_json(q).dump() == to_json(p).dump());
  CHECK(config_checksum(q) == config_checksum(p));

  const SweepConfig c = parse_sweep_config(R"({"preset": "norm_inflation", "beta": 0.125, "m_table": {"12": 17},
                                             "refinement": "refined", "seed": 5})");
  CHECK(c.m_table.at(12) == 17);
  const SweepConfig d = parse_sweep_config(to_json(c).dump());
  CHECK(d == c);
  CHECK(parse_sweep_config(to_json(d).dump()) == d);
  for (SweepRegime r : {SweepRegime::pwp, SweepRegime::norm_inflation, SweepRegime::deterministic_wp,
                        SweepRegime::energy_check}) {
    const SweepConfig e = preset(r);
    CHECK(parse_sweep_config(to_json(e).dump()) == e);
  }
}

TEST_CASE("checksum is FNV-1a 64") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
  CHECK(hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("property: CSV doubles round trip exactly") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = d(rng) * std::pow(10.0, (i % 40) - 20);
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("property: snapshot files round trip bitwise") {
  TempDir dir;
  std::mt19937_64 rng(9);
  std::vector<SpectralState> states;
  for (int j = 0; j < 3; ++j) {
    states.emplace_back(oracle::to_coeffs(oracle::random_hermitian(32, rng)),
                        oracle::to_coeffs(oracle::random_hermitian(32, rng)), 0.1 * j);
  }
  write_snapshots(dir / "s.bin", states);
  const std::vector<SpectralState> back = read_snapshots(dir / "s.bin");
  REQUIRE(back.size() == states.size());
  for (std::size_t j = 0; j < states.size(); ++j) {
    CHECK(std::memcmp(back[j].u.raw().data(), states[j].u.raw().data(), states[j].u.raw().size_bytes()) == 0);
    CHECK(std::memcmp(back[j].v.raw().data(), states[j].v.raw().data(), states[j].v.raw().size_bytes()) == 0);
    CHECK(back[j].t == states[j].t);
  }
}

TEST_CASE("snapshot layout") {
  TempDir dir;
  CoeffVector u(Grid(8));
  u.set(1, {1.0, 2.0});
  CoeffVector v(Grid(8));
  v.set(0, {3.0, 0.0});
  write_snapshots(dir / "s.bin", {SpectralState(u, v, 0.25)});
  const std::string bytes = read_text_file(dir / "s.bin");
  REQUIRE(bytes.size() == 8 + 8 + 8 + 8 + 2 * 8 * 16);
  CHECK(bytes.compare(0, 8, std::string("FNLW\0" "001", 8)) == 0);
  std::uint64_t m = 0, count = 0;
  double t = 0.0;
  std::memcpy(&m, bytes.data() + 8, 8);
  std::memcpy(&count, bytes.data() + 16, 8);
  std::memcpy(&t, bytes.data() + 24, 8);
  CHECK(m == 8);
  CHECK(count == 1);
  CHECK(t == 0.25);
  double uvals[16], vvals[16];
  std::memcpy(uvals, bytes.data() + 32, sizeof uvals);
  std::memcpy(vvals, bytes.data() + 32 + sizeof uvals, sizeof vvals);
  CHECK(uvals[2] == 1.0);   // n = 1
  CHECK(uvals[3] == 2.0);
  CHECK(uvals[14] == 1.0);  // n = -1 in the last slot
  CHECK(uvals[15] == -2.0);
  CHECK(vvals[0] == 3.0);
}

TEST_CASE("snapshot reader rejects malformed files") {
  TempDir dir;
  write_file(dir / "bad.bin", "NOTMAGIC........");
  CHECK_THROWS_AS(read_snapshots(dir / "bad.bin"), FormatError);
  write_snapshots(dir / "s.bin", {SpectralState(Grid(8))});
  std::string bytes = read_text_file(dir / "s.bin");
  write_file(dir / "cut.bin", bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(read_snapshots(dir / "cut.bin"), FormatError);
  write_file(dir / "extra.bin", bytes + "x");
  CHECK_THROWS_AS(read_snapshots(dir / "extra.bin"), FormatError);
  bytes[32 + 16 * 7 + 8] = 1;  // perturb a conjugate partner
  write_file(dir / "asym.bin", bytes);
  CHECK_THROWS_AS(read_snapshots(dir / "asym.bin"), FormatError);
}

TEST_CASE("cmd_sweep: outputs, row count and embedded rates") {
  TempDir dir;
  write_file(dir / "s.json", kSmallSweep);
  Streams io;
  REQUIRE(cmd_sweep({.config_path = dir / "s.json", .out_dir = dir / "out"}, io.out, io.err) == kExitOk);
  const std::vector<SummaryRow> rows = parse_summary_csv(read_text_file(dir / "out/summary.csv"));
  CHECK(rows.size() == 4 * 2);
  CHECK(fs::exists(dir / "out/runs/truncated_k3/timeseries.csv"));
  CHECK(fs::exists(dir / "out/runs/pathological_k6/manifest.json"));
  CHECK(fs::exists(dir / "out/sweep.json"));

  const SweepResult lib = run_sweep(parse_sweep_config(kSmallSweep));
  CHECK(read_text_file(dir / "out/rates.csv") == rates_csv(lib.rates));
  CHECK(read_text_file(dir / "out/summary.csv") == summary_csv(summary_rows(lib)));
  CHECK(rates_csv(summary_rates(rows)) == read_text_file(dir / "out/rates.csv"));

  Streams rates_io;
  CHECK(cmd_rates(dir / "out/summary.csv", rates_io.out, rates_io.err) == kExitOk);
  CHECK(rates_io.out.str() == io.out.str());
}

TEST_CASE("cmd_sweep: preset shorthand and argument checks") {
  TempDir dir;
  Streams io;
  CHECK(cmd_sweep({.preset_name = "pwp", .out_dir = dir / "pwp"}, io.out, io.err) == kExitOk);
  CHECK(parse_summary_csv(read_text_file(dir / "pwp/summary.csv")).size() == 9);
  CHECK(cmd_sweep({.preset_name = "unknown", .out_dir = dir / "x"}, io.out, io.err) == kExitInvalid);
  CHECK(cmd_sweep({.out_dir = dir / "x"}, io.out, io.err) == kExitInvalid);
}

TEST_CASE("cmd_sweep: refined flag and partial failures") {
  TempDir dir;
  Streams io;
  write_file(dir / "s.json", R"({"preset": "norm_inflation", "k_min": 3, "k_max": 5, "t_s": 0.001,
                                 "snapshots": 2, "m_table": {"5": 6}})");
  CHECK(cmd_sweep({.config_path = dir / "s.json", .out_dir = dir / "out", .refined = true}, io.out, io.err) ==
        kExitPartial);
  CHECK(io.err.str().find("N=32 kind=pathological") != std::string::npos);
  const auto doc = nlohmann::json::parse(read_text_file(dir / "out/sweep.json"));
  CHECK(doc.at("config").at("refinement") == "refined");
  CHECK(doc.at("failures").size() == 1);
}

TEST_CASE("cmd_rates: exact power law and schema errors") {
  TempDir dir;
  std::string csv = "N,kind,S_sup,delta,e_inf\n";
  for (int k = 4; k <= 10; ++k) {
    const double N = std::ldexp(1.0, k);
    csv += std::to_string(static_cast<int>(N)) + ",truncated," + format_double(2.0 * std::pow(N, 0.25)) + "," +
           (k == 4 ? std::string() : format_double(0.5 * std::pow(N, -0.5))) + ",\n";
  }
  write_file(dir / "s.csv", csv);
  Streams io;
  REQUIRE(cmd_rates(dir / "s.csv", io.out, io.err) == kExitOk);
  const std::vector<SeriesRate> rates = summary_rates(parse_summary_csv(csv));
  REQUIRE(rates.size() == 2);
  CHECK(std::abs(rates[0].fit.exponent - 0.25) < 1e-12);
  CHECK(std::abs(rates[1].fit.exponent + 0.5) < 1e-12);
  CHECK(io.out.str().find("truncated S_sup: exponent 0.2") != std::string::npos);

  write_file(dir / "bad.csv", "N,kind,S_sup,e_inf\n16,truncated,1,\n");
  Streams bad;
  CHECK(cmd_rates(dir / "bad.csv", bad.out, bad.err) == kExitFormat);
  CHECK(bad.err.str().find("missing column 'delta'") != std::string::npos);

  write_file(dir / "junk.csv", "N,kind,S_sup,delta,e_inf\n16,truncated,abc,,\n");
  CHECK(cmd_rates(dir / "junk.csv", bad.out, bad.err) == kExitFormat);
  CHECK_THROWS_WITH_AS(parse_summary_csv("N,kind,S_sup,delta\n"), "missing column 'e_inf'", FormatError);
}
