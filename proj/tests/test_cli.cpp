#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"
#include "cli_app.hpp"
#include "qdl/report_io.hpp"

using namespace qdl;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qdl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

cplx value_of(const std::string& human) {
  const auto first = lines(human).front();
  REQUIRE(first.rfind("value ", 0) == 0);
  return *parse_complex(first.substr(6));
}

}  // namespace

TEST_CASE("complex parsing and formatting") {
  CHECK(*parse_complex("0+1i") == cplx(0.0, 1.0));
  CHECK(*parse_complex("0.809+0.588i") == cplx(0.809, 0.588));
  CHECK(*parse_complex("-2.5e-3-4i") == cplx(-2.5e-3, -4.0));
  CHECK(*parse_complex("1e+2") == cplx(100.0, 0.0));
  CHECK(*parse_complex("-i") == cplx(0.0, -1.0));
  CHECK(*parse_complex("3j") == cplx(0.0, 3.0));
  CHECK(*parse_complex("1.5 -2") == cplx(1.5, -2.0));
  CHECK_FALSE(parse_complex("abc"));
  CHECK_FALSE(parse_complex("1+2k"));
  CHECK_FALSE(parse_complex(""));
  CHECK_FALSE(parse_complex("nan"));
  // Bit-faithful round trip through the wire format.
  {
    std::uint64_t state = 12345;
    for (int k = 0; k < 200; ++k) {
      state = state * 6364136223846793005ULL + 1;
      const double re = std::ldexp(static_cast<double>(state >> 11), -53) * 1e6 - 5e5;
      state = state * 6364136223846793005ULL + 1;
      const double im = std::ldexp(static_cast<double>(state >> 11), -53) * 1e-3;
      const cplx z(re, im);
      CHECK(*parse_complex(format_complex(z)) == z);
    }
  }
}

TEST_CASE("eval examples") {
  const Run a = run({"eval", "--family", "tropical", "--target", "phi", "--args", "z=0+1i,m=3"});
  CHECK(a.code == 0);
  CHECK(value_of(a.out) == cplx(0.0, -1.0));
  CHECK(lines(a.out).back() == "error 0");

  const Run b = run({"eval", "--family", "dgg", "--q", "0.3", "--target", "weil_phi", "--args", "u=0.4,m=0,v=2,n=0"});
  CHECK(b.code == 0);
  CHECK(std::abs(value_of(b.out) - dgg_weil_phi(0.3, 0.4, 0, 2.0, 0)) < 1e-15);
  CHECK(lines(b.out).back() == "error 0");

  const Run c = run({"eval", "--family", "faddeev", "--b", "0.809+0.588i", "--target", "phi", "--args", "x=0.3", "--rep",
                     "integral", "--format", "json"});
  CHECK(c.code == 0);
  const auto j = nlohmann::json::parse(c.out);
  const cplx v = *parse_complex(j["value"].get<std::string>());
  CHECK(std::abs(v - faddeev_phi(cplx(0.809, 0.588), 0.3, FaddeevRep::Product)) < 1e-8);
  CHECK(j["error_estimate"].get<double>() > 0.0);
  CHECK(j["nodes"].get<long long>() > 0);
}

TEST_CASE("eval targets") {
  CHECK(run({"eval", "--target", "theta", "--args", "q=0.1,x=2"}).code == 0);
  CHECK(run({"eval", "--target", "qpoch", "--args", "a=0.3,q=0.5,k=2"}).code == 0);
  CHECK(std::abs(value_of(run({"eval", "--target", "qpoch", "--args", "a=0.3,q=0.5,k=2"}).out) - 0.7 * 0.85) < 1e-15);
  CHECK(run({"eval", "--group", "circle", "--target", "gamma"}).code == 0);
  const Run e = run({"eval", "--family", "ak", "--N", "4", "--theta", "1", "--target", "epsilon"});
  CHECK(e.code == 0);
  CHECK(lines(e.out)[1] == "discrete 0");
  CHECK(run({"eval", "--family", "tropical", "--target", "star_weight", "--args", "lambda=1.5,lambda_m=1,y=1.2,y_m=1"})
            .code == 0);
  CHECK(run({"eval", "--family", "tropical", "--target", "irf_m", "--args", "x=0.5,y=0.6,z=4"}).code == 0);
  const Run w = run({"eval", "--family", "tropical", "--target", "fv_weight", "--args", "lambda=2,x=1i,x_m=2"});
  CHECK(w.code == 0);
}

TEST_CASE("eval errors map to exit codes") {
  // Domain errors exit 2.
  CHECK(run({"eval", "--family", "tropical", "--target", "weil_phi", "--args", "u=0.5,m=0,v=2,n=0"}).code == 2);
  CHECK(run({"eval", "--family", "tropical", "--target", "irf_m", "--args", "x=0.3,y=0.4,z=2"}).code == 2);
  CHECK(run({"eval", "--family", "faddeev", "--b", "0.5-0.5i", "--target", "phi", "--args", "x=0"}).code == 2);
  // Usage errors exit 64.
  CHECK(run({"eval", "--family", "tropical", "--target", "nope"}).code == 64);
  CHECK(run({"eval", "--family", "tropical", "--target", "phi", "--args", "z=1,m=0,w=3"}).code == 64);
  CHECK(run({"eval", "--family", "tropical", "--target", "phi", "--args", "z=1+"}).code == 64);
  CHECK(run({"eval", "--family", "klein", "--target", "phi"}).code == 64);
  CHECK(run({"eval", "--bogus"}).code == 64);
  CHECK(run({}).code == 64);
  CHECK(run({"eval", "--target", "phi", "--family", "tropical", "--args", "z=1", "--format", "xml"}).code == 64);
}

TEST_CASE("verify: single checks") {
  const Run u = run({"verify", "--check", "unitarity", "--b", "1", "--format", "json"});
  CHECK(u.code == 0);
  const auto ls = lines(u.out);
  REQUIRE(ls.size() == 2);
  const auto rep = nlohmann::json::parse(ls[0]);
  CHECK(rep["identity"] == "unitarity");
  CHECK(rep["passed"] == true);
  CHECK(rep["error"].is_null());
  const auto sum = nlohmann::json::parse(ls[1]);
  CHECK(sum["summary"]["all_passed"] == true);

  // |b| = 1 satisfies the unitarity precondition.
  CHECK(run({"verify", "--check", "unitarity", "--b", "0.8+0.6i"}).code == 0);
  const Run bad = run({"verify", "--check", "unitarity", "--b", "0.5+0.5i"});
  CHECK(bad.code == 2);
  CHECK(nlohmann::json::parse(lines(bad.out)[0])["error"] == "OutOfDomain");

  CHECK(run({"verify", "--check", "irf_ybe", "--family", "tropical"}).code == 0);
  CHECK(run({"verify", "--check", "irf_ybe", "--family", "tropical", "--point",
             "x=1.5+0.45i,y=1.6-0.3i,p=1,q=-0.3+0.95i,u=0.76+0.64i,v=0.92-0.39i"})
            .code == 0);
  CHECK(run({"verify", "--check", "inversion", "--family", "tropical", "--samples", "10"}).code == 0);
  // Tightening the tolerance below the residual turns the check into a failure.
  CHECK(run({"verify", "--check", "representation_agreement", "--b", "1.1", "--reps", "integral,woronowicz", "--tol",
             "1e-30"})
            .code == 1);
}

TEST_CASE("verify: usage errors") {
  CHECK(run({"verify", "--suite", "nope"}).code == 64);
  CHECK(run({"verify", "--check", "nope"}).code == 64);
  CHECK(run({"verify"}).code == 64);
  CHECK(run({"verify", "--suite", "ybe", "--check", "inversion"}).code == 64);
  CHECK(run({"verify", "--check", "inversion"}).code == 64);
}

TEST_CASE("verify output is deterministic and finite") {
  const Run a = run({"verify", "--suite", "ybe", "--seed", "7"});
  const Run b = run({"verify", "--suite", "ybe", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  for (const auto& l : lines(a.out)) {
    const auto j = nlohmann::json::parse(l);
    if (j.contains("summary")) continue;
    for (const char* k : {"abs_residual", "rel_residual", "tolerance"}) CHECK(j[k].is_number());
    for (const char* k : {"lhs", "rhs"}) CHECK(parse_complex(j[k].get<std::string>()));
  }
}

TEST_CASE("non-finite report values become error records") {
  VerificationReport r;
  r.identity = "x";
  r.lhs = cplx(std::numeric_limits<double>::infinity(), 0.0);
  r.passed = true;
  const auto j = to_json(r);
  CHECK(j["lhs"].is_null());
  CHECK(j["passed"] == false);
  CHECK(j["error"] == "NonConvergent");
}

TEST_CASE("table") {
  const Run t = run({"table", "--family", "faddeev", "--b", "1", "--target", "phi", "--vary", "x=-3:3:121"});
  CHECK(t.code == 0);
  const auto ls = lines(t.out);
  REQUIRE(ls.size() == 122);
  CHECK(ls[0] == "x_re,x_im,re,im,abs,err");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    std::vector<std::string> cols;
    std::stringstream ss(ls[i]);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    REQUIRE(cols.size() == 6);
    CHECK(std::abs(std::stod(cols[4]) - 1.0) < 1e-8);
  }

  // θ_q on the unit circle is symmetric under x ↦ 1/x: rows k and n-k agree.
  const Run th = run({"table", "--target", "theta", "--args", "q=0.3", "--vary", "x=circle:1:16"});
  CHECK(th.code == 0);
  const auto tl = lines(th.out);
  REQUIRE(tl.size() == 17);
  auto val = [&](std::size_t row) {
    std::vector<std::string> c;
    std::stringstream ss(tl[row]);
    for (std::string s; std::getline(ss, s, ',');) c.push_back(s);
    return cplx(std::stod(c[2]), std::stod(c[3]));
  };
  for (std::size_t k = 1; k < 16; ++k) CHECK(std::abs(val(1 + k) - val(1 + 16 - k)) < 1e-13);

  // Tropical M is constant in the contour radius inside the annulus (0.6, 1.2).
  const Run m = run({"table", "--family", "tropical", "--target", "irf_m", "--args", "x=0.5,y=0.6,z=4", "--rep", "contour",
                     "--vary", "contour_radius=0.65:1.15:6"});
  CHECK(m.code == 0);
  const auto ml = lines(m.out);
  REQUIRE(ml.size() == 7);
  std::vector<double> re;
  for (std::size_t i = 1; i < ml.size(); ++i) re.push_back(std::stod(ml[i].substr(ml[i].find(',', ml[i].find(',') + 1) + 1)));
  for (double v : re) CHECK(std::abs(v - re.front()) < 1e-10 * std::max(1.0, std::abs(re.front())));

  // Points outside the annulus become error rows.
  const Run out = run({"table", "--family", "tropical", "--target", "irf_m", "--args", "x=0.5,y=0.6,z=4", "--rep", "contour",
                       "--vary", "contour_radius=0.5:1.0:2"});
  CHECK(out.code == 2);
  CHECK(lines(out.out)[1].find("OutOfDomain") != std::string::npos);

  // Two axes, row-major.
  const Run two = run({"table", "--target", "theta", "--vary", "q=0.1:0.2:2", "--vary", "x=1:2:3"});
  CHECK(two.code == 0);
  CHECK(lines(two.out).size() == 7);
  CHECK(lines(two.out)[0] == "q_re,q_im,x_re,x_im,re,im,abs,err");

  CHECK(run({"table", "--target", "theta", "--args", "q=0.3"}).code == 64);
  CHECK(run({"table", "--target", "theta", "--args", "q=0.3,x=1", "--vary", "x=1:2:3"}).code == 64);
  CHECK(run({"table", "--target", "theta", "--vary", "q=0.1:0.2", "--args", "x=1"}).code == 64);
}

TEST_CASE("config file, precedence and unknown keys") {
  const std::string cfg = temp_file("qdl_cli_cfg.json",
                                    R"({"family": "tropical", "target": "phi", "args": {"z": "0+1i", "m": 2},
                                        "numerics": {"abs_tol": 1e-12}})");
  const Run a = run({"eval", "--config", cfg});
  CHECK(a.code == 0);
  CHECK(value_of(a.out) == cplx(-1.0, 0.0));
  const Run b = run({"eval", "--config", cfg, "--args", "z=0+1i,m=1"});
  CHECK(value_of(b.out) == cplx(0.0, 1.0));

  const std::string bad = temp_file("qdl_cli_bad.json", R"({"family": "tropical", "colour": "red"})");
  CHECK(run({"eval", "--config", bad}).code == 64);
  const std::string badnum = temp_file("qdl_cli_badnum.json", R"({"numerics": {"speed": 3}})");
  CHECK(run({"eval", "--config", badnum}).code == 64);
  const std::string wrong = temp_file("qdl_cli_wrong.json", R"({"command": "verify"})");
  CHECK(run({"eval", "--config", wrong}).code == 64);
  CHECK(run({"eval", "--config", "/nonexistent/qdl.json"}).code == 64);
  CHECK(run({"eval", "--family", "tropical", "--target", "phi", "--args", "z=1,m=0", "--max-nodes", "10"}).code == 64);
}

TEST_CASE("default tolerance from the environment") {
  ::setenv(cli::kToleranceEnv, "not-a-number", 1);
  CHECK(run({"eval", "--family", "tropical", "--target", "phi", "--args", "z=1,m=0"}).code == 64);
  ::setenv(cli::kToleranceEnv, "1e-6", 1);
  const Run loose = run({"eval", "--family", "faddeev", "--b", "1", "--target", "phi", "--args", "x=0.3", "--format",
                         "json"});
  ::unsetenv(cli::kToleranceEnv);
  const Run tight = run({"eval", "--family", "faddeev", "--b", "1", "--target", "phi", "--args", "x=0.3", "--format",
                         "json"});
  CHECK(loose.code == 0);
  CHECK(tight.code == 0);
  const auto jl = nlohmann::json::parse(loose.out), jt = nlohmann::json::parse(tight.out);
  CHECK(jl["nodes"].get<long long>() < jt["nodes"].get<long long>());
}

TEST_CASE("output file") {
  const auto path = (std::filesystem::temp_directory_path() / "qdl_cli_out.txt").string();
  std::filesystem::remove(path);
  const Run r = run({"eval", "--family", "tropical", "--target", "phi", "--args", "z=2,m=1", "--output", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first == "value 2 0");
}
