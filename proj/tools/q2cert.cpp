// Command-line front end: classify, batch, sweep, verify.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "q2cert/graph6.hpp"
#include "q2cert/pipeline.hpp"

namespace {

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r\n") - a + 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q2cert: certify q(G) = 2 for dense graphs"};
  app.require_subcommand(1);

  q2cert::PipelineConfig cfg;

  auto* cls = app.add_subcommand("classify", "classify one graph and emit a certificate");
  std::string input, json_out;
  cls->add_option("graph6", input, "graph6 string, or - for stdin")->required();
  cls->add_option("--seed", cfg.seed, "master seed")->envname("Q2CERT_SEED");
  cls->add_option("--tol-residual", cfg.tol.residual, "optimizer acceptance residual")->envname("Q2CERT_TOL_RESIDUAL");
  cls->add_option("--tol-rank", cfg.tol.rank, "relative SSP rank tolerance")->envname("Q2CERT_TOL_RANK");
  cls->add_option("--restarts", cfg.restarts, "search restarts")->envname("Q2CERT_RESTARTS");
  cls->add_flag("--exact-only", cfg.exact_only, "refuse floating realizations")->envname("Q2CERT_EXACT_ONLY");
  cls->add_option("--json", json_out, "write the certificate here instead of stdout")->envname("Q2CERT_JSON");

  auto* bat = app.add_subcommand("batch", "classify every graph6 line of a file");
  std::string batch_in, batch_out;
  int jobs = 1;
  bat->add_option("input", batch_in, "graph6 file, one graph per line")->required();
  bat->add_option("output", batch_out, "JSON lines output")->required();
  bat->add_option("--jobs", jobs, "worker threads")->envname("Q2CERT_JOBS")->check(CLI::PositiveNumber);
  bat->add_option("--seed", cfg.seed, "master seed")->envname("Q2CERT_SEED");
  bat->add_option("--restarts", cfg.restarts, "search restarts")->envname("Q2CERT_RESTARTS");

  auto* swp = app.add_subcommand("sweep", "classify all dense iso-classes of one order");
  int sweep_n = 0, max_cobar = -1;
  std::string report;
  swp->add_option("--n", sweep_n, "order")->required()->envname("Q2CERT_N")->check(CLI::Range(2, 8));
  swp->add_option("--max-cobar-edges", max_cobar, "largest complement size (default n-2)")->envname("Q2CERT_MAX_COBAR_EDGES");
  swp->add_option("--report", report, "report JSON path")->required()->envname("Q2CERT_REPORT");
  swp->add_option("--seed", cfg.seed, "master seed")->envname("Q2CERT_SEED");
  swp->add_option("--restarts", cfg.restarts, "search restarts")->envname("Q2CERT_RESTARTS");

  auto* ver = app.add_subcommand("verify", "re-check a certificate from its JSON alone");
  std::string cert_path;
  ver->add_option("certificate", cert_path, "certificate JSON, or - for stdin")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cls) {
      const std::string g6 = trim(input == "-" ? read_all(std::cin) : input);
      const q2cert::Certificate c = q2cert::classify(q2cert::parse_graph6(g6), cfg);
      const std::string text = q2cert::to_json(c).dump(2) + "\n";
      if (json_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream(json_out) << text;
        std::cout << q2cert::to_string(c.verdict) << '\n';
      }
      return 0;
    }
    if (*bat) {
      std::ifstream in(batch_in);
      if (!in) throw std::runtime_error("cannot open " + batch_in);
      std::ofstream out(batch_out);
      if (!out) throw std::runtime_error("cannot write " + batch_out);
      const auto s = q2cert::batch_run(in, out, jobs, cfg);
      std::cout << "total " << s.total << " q2 " << s.q2 << " q3 " << s.q3 << " unknown " << s.unknown << " errors "
                << s.errors << " seconds " << s.seconds << '\n';
      return 0;
    }
    if (*swp) {
      if (max_cobar < 0) max_cobar = sweep_n - 2;
      const auto rep = q2cert::conjecture_sweep(sweep_n, max_cobar, cfg);
      std::ofstream(report) << rep.to_json().dump(2) << '\n';
      for (const auto& r : rep.rows) {
        std::cout << "e=" << r.complement_edges << " classes " << r.classes << " q2 " << r.q2 << " q3 " << r.q3
                  << " unknown " << r.unknown << " failures " << r.failures.size() << '\n';
      }
      std::cout << (rep.conjecture_holds() ? "conjecture holds" : "COUNTEREXAMPLE OR FAILURE, see report") << '\n';
      return rep.conjecture_holds() ? 0 : 3;
    }
    if (*ver) {
      std::string text;
      if (cert_path == "-") {
        text = read_all(std::cin);
      } else {
        std::ifstream in(cert_path);
        if (!in) throw std::runtime_error("cannot open " + cert_path);
        text = read_all(in);
      }
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (const nlohmann::json::exception& ex) {
        std::cout << "REJECTED at step parse: " << ex.what() << '\n';
        return 1;
      }
      const auto r = q2cert::verify_certificate(j);
      if (r.ok) {
        std::cout << "VERIFIED";
        for (const auto& s : r.passed) std::cout << ' ' << s;
        std::cout << '\n';
        return 0;
      }
      std::cout << "REJECTED at step " << r.failing_step << ": " << r.message << '\n';
      return 1;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
  return 0;
}
