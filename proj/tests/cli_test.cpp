#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string& binary() {
  static const std::string bin = [] {
    const char* env = std::getenv("STEERKIT_BIN");
    REQUIRE_MESSAGE(env != nullptr, "STEERKIT_BIN must point at the CLI binary");
    return std::string(env);
  }();
  return bin;
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "steerkit-cli-test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("out" + std::to_string(counter) + ".txt");
  const fs::path err = scratch_dir() / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = env_prefix + binary() + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

// CSV with the trailing runtime_ms column removed, for byte comparisons.
std::string mask_runtime(const std::string& csv) {
  std::string masked;
  std::stringstream ss(csv);
  std::string line;
  while (std::getline(ss, line)) {
    const auto cut = line.rfind(',');
    masked += line.substr(0, cut);
    masked += '\n';
  }
  return masked;
}

}  // namespace

TEST_CASE("version flag") {
  const RunResult r = run("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0.1.0\n");
}

TEST_CASE("reduce emits the closed-form pair state") {
  const RunResult r =
      run("reduce --scenario srpe --n 4 --alpha 0.3 --mu 0.1 --format json");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("a").get<double>() == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(doc.at("b").get<double>() ==
        doctest::Approx(0.786666666666667).epsilon(1e-12));
  CHECK(doc.at("t_x").get<double>() ==
        doctest::Approx(0.274954541697350).epsilon(1e-12));
  CHECK(doc.at("t_z").get<double>() == doctest::Approx(0.54).epsilon(1e-12));
  CHECK(doc.at("concurrence").get<double>() ==
        doctest::Approx(0.188995895309166).epsilon(1e-9));

  const RunResult csv =
      run("reduce --scenario srpe --n 4 --alpha 0.3 --mu 0.1 --format csv");
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.out.rfind("scenario,n,alpha,mu,direction,a,b,t_x,t_y,t_z,t_perp,"
                      "concurrence\n",
                      0) == 0);
  CHECK(csv.out.find("srpe,4,0.3,0.1,ab,") != std::string::npos);
}

TEST_CASE("reduce rejects invalid scenarios with exit 2") {
  CHECK(run("reduce --scenario rhalfpe --n 3 --alpha 0.3").exit_code == 2);
  CHECK(run("reduce --scenario srpe --n 4 --alpha 0.7").exit_code == 2);
  CHECK(run("reduce --scenario nonsense --n 4 --alpha 0.3").exit_code == 2);
  CHECK(run("reduce --scenario srpe --alpha 0.3").exit_code == 2);  // missing --n
}

TEST_CASE("threshold prints nine-digit values") {
  const RunResult me =
      run("threshold --scenario srpe --scheme equatorial --n 6 --direction ab");
  REQUIRE(me.exit_code == 0);
  CHECK(me.out == "0.381513542\n");

  const RunResult m2 = run("threshold --scenario srpe --scheme m2 --n 4");
  REQUIRE(m2.exit_code == 0);
  CHECK(m2.out == "0.333333333\n");

  const RunResult none = run("threshold --scenario rhalfpe --scheme m2 --n 6");
  REQUIRE(none.exit_code == 0);
  CHECK(none.out == "none\n");

  const RunResult rev =
      run("threshold --scenario srpe --scheme m3 --alpha 0.25 --direction ba");
  REQUIRE(rev.exit_code == 0);
  CHECK(rev.out == "3.000000000\n");

  // Exactly one of --n / --alpha must be fixed.
  CHECK(run("threshold --scenario srpe --scheme m2").exit_code == 2);
  CHECK(run("threshold --scenario srpe --scheme m2 --n 4 --alpha 0.2").exit_code == 2);
  CHECK(run("threshold --scenario srpe --scheme bogus --n 4").exit_code == 2);
}

TEST_CASE("threshold JSON record") {
  const fs::path out = scratch_dir() / "threshold.json";
  const RunResult r = run("threshold --scenario srpe --scheme equatorial --n 6 --out " +
                          out.string());
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(slurp(out));
  CHECK(doc.at("result").get<double>() ==
        doctest::Approx(0.3815135418411637).epsilon(1e-12));
  CHECK(doc.at("query").at("scenario") == "srpe");
  CHECK(doc.at("query").at("solve_for") == "alpha");
}

TEST_CASE("config file supplies defaults and flags override") {
  const fs::path cfg = scratch_dir() / "threshold.cfg";
  std::ofstream(cfg) << "scenario=srpe\nscheme=equatorial\nn=6\ndirection=ab\n";
  const RunResult from_cfg = run("threshold --config " + cfg.string());
  REQUIRE(from_cfg.exit_code == 0);
  CHECK(from_cfg.out == "0.381513542\n");

  // The command line wins over the file.
  const RunResult overridden = run("threshold --config " + cfg.string() + " --scheme m3");
  REQUIRE(overridden.exit_code == 0);
  CHECK(overridden.out == "0.333333333\n");
}

TEST_CASE("classify prints the case id and label") {
  const RunResult c3 = run("classify --scenario srpe --n 4 --alpha 0.25 --scheme m2");
  REQUIRE(c3.exit_code == 0);
  CHECK(c3.out == "case3 hub-one-way\n");

  const RunResult c4 = run("classify --scenario srpe --n 4 --alpha 0.34 --scheme m2");
  REQUIRE(c4.exit_code == 0);
  CHECK(c4.out == "case4 no-steering\n");

  const RunResult c2 =
      run("classify --scenario srpe --n 3 --alpha 0.25 --scheme equatorial");
  REQUIRE(c2.exit_code == 0);
  CHECK(c2.out == "case2 hub-mutual\n");

  const fs::path out = scratch_dir() / "classify.json";
  const RunResult with_json = run(
      "classify --scenario rpe --n 3 --alpha 0.2 --scheme m3 --out " + out.string());
  REQUIRE(with_json.exit_code == 0);
  const json doc = json::parse(slurp(out));
  CHECK(doc.at("case") == "case4");
  CHECK(doc.at("label") == "no-steering");
  CHECK(doc.at("edges").size() == 6);

  CHECK(run("classify --scenario srpe --n 3.5 --alpha 0.25 --scheme m2").exit_code == 2);
}

TEST_CASE("sweep produces a deterministic grid") {
  const std::string args =
      "sweep --scenario srpe --schemes m2,equatorial --ns 3,4 "
      "--alpha-min 0.1 --alpha-max 0.3 --alpha-step 0.1 --direction ab";
  const RunResult first = run(args, "STEERKIT_THREADS=4 ");
  REQUIRE(first.exit_code == 0);
  const RunResult second = run(args, "STEERKIT_THREADS=1 ");
  REQUIRE(second.exit_code == 0);
  CHECK(mask_runtime(first.out) == mask_runtime(second.out));

  std::stringstream ss(first.out);
  std::string header;
  std::getline(ss, header);
  CHECK(header ==
        "scenario,n,alpha,mu,scheme,direction,lhs,rhs,margin,verdict,"
        "concurrence,runtime_ms");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  REQUIRE(lines.size() == 12);  // 2 schemes x 2 n x 3 alpha
  // Lexicographic order: scheme, then n, then alpha.
  CHECK(lines[0].rfind("srpe,3,0.1,0,m2,ab,", 0) == 0);
  CHECK(lines[1].rfind("srpe,3,0.2,0,m2,ab,", 0) == 0);
  CHECK(lines[5].rfind("srpe,4,0.3,0,m2,ab,", 0) == 0);
  CHECK(lines[6].rfind("srpe,3,0.1,0,equatorial,ab,", 0) == 0);
  // srpe n=3 steers for alpha < 1/2 under m2.
  CHECK(lines[0].find(",steerable,") != std::string::npos);
}

TEST_CASE("sweep JSON format carries the same rows") {
  const RunResult r = run(
      "sweep --scenario rpe --scheme m2 --n 3 --alphas 0.1,0.2 --format json");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc.at("rows").size() == 2);
  CHECK(doc["rows"][0].at("verdict") == "unsteerable");
  CHECK(doc["rows"][0].at("scheme") == "m2");
  CHECK(doc["rows"][0].at("lhs").get<double>() == doctest::Approx(2.0));
}

TEST_CASE("sweep argument failures exit 2") {
  CHECK(run("sweep --scenario srpe --scheme m2 --n 4").exit_code == 2);  // no alpha
  CHECK(run("sweep --scenario srpe --scheme m2 --n 4 --alphas ,").exit_code == 2);
  CHECK(run("sweep --scenario srpe --scheme m2 --n 4 --alpha 0.9").exit_code == 2);
  CHECK(run("sweep --scenario srpe --scheme m2 --n 4 --alpha 0.2 --format xml")
            .exit_code == 2);
}

TEST_CASE("sweep marks rows that fail numerically with exit 3") {
  // Resolution 5 is below the all-projective floor; every row errors out.
  const RunResult r =
      run("sweep --scenario srpe --scheme projective:5 --n 3 --alpha 0.2");
  CHECK(r.exit_code == 3);
  CHECK(r.out.find(",error,") != std::string::npos);
}

TEST_CASE("analytic oracle round-trips through verify") {
  const fs::path cert = scratch_dir() / "cert_unsteerable.json";
  const RunResult r = run(
      "oracle --scenario srpe --n 5 --alpha 0.3 --scheme m2 --resolution 62 "
      "--polytope inscribed --out " +
      cert.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "unsteerable\n");

  const json doc = json::parse(slurp(cert));
  CHECK(doc.at("verdict") == "unsteerable");
  CHECK(doc.at("certificate").at("type") == "lhs_model");
  CHECK(doc.at("input").at("target") == "assemblage");
  CHECK(doc.at("input").at("polytope").at("resolution") == 162);  // snapped

  const RunResult ok = run("verify --cert " + cert.string());
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.rfind("verified", 0) == 0);

  // Tampering with a weight must break verification with exit 3.
  json bad = doc;
  bad["certificate"]["entries"][0]["weight"] =
      bad["certificate"]["entries"][0]["weight"].get<double>() + 0.05;
  const fs::path tampered = scratch_dir() / "cert_tampered.json";
  std::ofstream(tampered) << bad.dump(2) << "\n";
  const RunResult fail = run("verify --cert " + tampered.string());
  CHECK(fail.exit_code == 3);
  CHECK(fail.out.rfind("verification failed", 0) == 0);
}

TEST_CASE("steerable oracle certificate carries a checkable witness") {
  const fs::path state = scratch_dir() / "pure_state.json";
  std::ofstream(state) << R"({"x_params": {"a": 0.0, "b": 0.0,
      "t_x": 1.0, "t_y": -1.0, "t_z": 1.0}})";
  const fs::path cert = scratch_dir() / "cert_steerable.json";
  const RunResult r = run("oracle --state " + state.string() +
                          " --scheme m2 --resolution 12 --polytope circumscribed "
                          "--out " +
                          cert.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "steerable\n");

  const json doc = json::parse(slurp(cert));
  CHECK(doc.at("certificate").at("type") == "witness");
  CHECK(doc.at("input").at("polytope").at("mode") == "circumscribed");

  const RunResult ok = run("verify --cert " + cert.string());
  CHECK(ok.exit_code == 0);

  // Zeroing the witness functional kills the separation.
  json bad = doc;
  for (auto& v : bad["certificate"]["g"]) v = 0.0;
  for (auto& block : bad["certificate"]["f"]) {
    for (auto& v : block) v = 0.0;
  }
  const fs::path tampered = scratch_dir() / "cert_wit_tampered.json";
  std::ofstream(tampered) << bad.dump(2) << "\n";
  CHECK(run("verify --cert " + tampered.string()).exit_code == 3);
}

TEST_CASE("projective oracle certificate at a coarse net") {
  const fs::path cert = scratch_dir() / "cert_projective.json";
  const RunResult r = run(
      "oracle --scenario srpe --n 3 --alpha 0.5 --mu 0.7 "
      "--scheme projective:12 --out " +
      cert.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "unsteerable\n");

  const json doc = json::parse(slurp(cert));
  CHECK(doc.at("input").at("target") == "formal");
  CHECK(doc.at("input").at("net").at("resolution") == 12);
  CHECK(doc.at("input").at("polytope").at("resolution") == 162);
  CHECK(run("verify --cert " + cert.string()).exit_code == 0);
}

TEST_CASE("verify handles missing and malformed inputs") {
  CHECK(run("verify --cert /nonexistent/path.json").exit_code == 2);
  const fs::path junk = scratch_dir() / "junk.json";
  std::ofstream(junk) << "{not json";
  CHECK(run("verify --cert " + junk.string()).exit_code == 2);

  const fs::path badstate = scratch_dir() / "bad_state.json";
  std::ofstream(badstate) << R"({"x_params": {"a": 2.5}})";
  CHECK(run("oracle --state " + badstate.string() + " --scheme m2").exit_code == 2);
}

TEST_CASE("undecided certificates verify trivially") {
  // Inscribed-only attempt on a steerable state cannot decide.
  const fs::path state = scratch_dir() / "pure_state2.json";
  std::ofstream(state) << R"({"x_params": {"a": 0.0, "b": 0.0,
      "t_x": 1.0, "t_y": -1.0, "t_z": 1.0}})";
  const fs::path cert = scratch_dir() / "cert_undecided.json";
  const RunResult r = run("oracle --state " + state.string() +
                          " --scheme m2 --resolution 12 --polytope inscribed --out " +
                          cert.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "undecided\n");
  const json doc = json::parse(slurp(cert));
  CHECK(doc.at("certificate").at("type") == "none");
  const RunResult ok = run("verify --cert " + cert.string());
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.rfind("verified", 0) == 0);
}
