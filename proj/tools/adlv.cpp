// adlv: parse, validate, transform, check and export architecture models.
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "adlv/checker.hpp"
#include "adlv/fuzz.hpp"
#include "adlv/parser.hpp"
#include "adlv/report.hpp"
#include "adlv/transform.hpp"
#include "adlv/uppaal.hpp"
#include "fixture.hpp"

namespace fs = std::filesystem;
using namespace adlv;

namespace {

enum Exit : int { kOk = 0, kViolated = 1, kError = 2, kUnknown = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// `@ssu`, `@ssu.q` and `@ssu_extra.q` name the embedded fixture.
std::string read_input(const std::string& path) {
  if (path == "@ssu" || path == "@ssu.adl") return fixture::kSsuModel;
  if (path == "@ssu.q") return fixture::kSsuQueries;
  if (path == "@ssu_extra.q") return fixture::kSsuExtraQueries;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::string log_name(const std::string& path) {
  return path.starts_with("@") ? path.substr(1) : path;
}

// Parse and validate; diagnostics go to stderr. Errors abort with exit 2.
FaaModel load_model(const std::string& path) {
  FaaModel m = parse_model(read_input(path), log_name(path));
  Diagnostics diags = validate_model(m);
  for (const auto& d : diags)
    if (d.severity != Severity::Info) std::cerr << log_name(path) << ": " << to_string(d) << "\n";
  if (has_errors(diags)) throw InputError("model has validation errors");
  return m;
}

std::size_t default_max_states() {
  if (const char* env = std::getenv("ADLV_MAX_STATES")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed ADLV_MAX_STATES=" << env << "\n";
    }
  }
  return 1'000'000;
}

struct CheckFlags {
  std::string model, queries, output;
  bool json = false;
  std::string order = "bfs";
  std::size_t max_states = default_max_states();
  bool no_subsumption = false;
};

int cmd_check(const CheckFlags& f) {
  FaaModel model = load_model(f.model);
  std::vector<Query> queries = parse_queries(read_input(f.queries), log_name(f.queries));
  Checker checker(transform_faa(model));

  CheckOptions opts;
  opts.order = f.order == "dfs" ? SearchOrder::Dfs : SearchOrder::Bfs;
  opts.max_states = f.max_states;
  opts.subsumption = !f.no_subsumption;

  Report report;
  report.model = model.name;
  report.order = f.order;
  report.max_states = f.max_states;
  report.subsumption = opts.subsumption;
  for (const auto& q : queries) {
    Verdict v;
    try {
      v = checker.check(q, opts);
    } catch (const std::exception& e) {
      // Ill-typed queries are input errors, reported against the query line.
      throw InputError(log_name(f.queries) + ":" + std::to_string(q.line) + ": " + e.what());
    }
    report.records.push_back(make_record(checker, q, v));
  }
  write_output(f.output, f.json ? to_json(report) : to_text(report));
  if (report.any_violated()) return kViolated;
  if (report.any_unknown()) return kUnknown;
  return kOk;
}

int cmd_transform(const std::string& model_path, const std::string& observer, const std::string& output) {
  FaaModel model = load_model(model_path);
  Network net = transform_faa(model);
  if (!observer.empty()) {
    auto qs = parse_queries(observer, "--with-observer");
    if (qs.size() != 1 || qs[0].kind != QueryKind::BoundedResponse)
      throw InputError("--with-observer expects one `response e1 => e2 within T` query");
    net = attach_observer(std::move(net), qs[0]);
  }
  write_output(output, dump(net));
  return kOk;
}

// Runs the external verifier and returns one verdict line per query.
std::vector<std::string> run_external(const std::string& bin, const fs::path& xml, const fs::path& q,
                                      std::size_t nqueries) {
  std::vector<std::string> out(nqueries, "no verdict");
  const std::string cmd = "\"" + bin + "\" \"" + xml.string() + "\" \"" + q.string() + "\" 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    std::fill(out.begin(), out.end(), "failed to start " + bin);
    return out;
  }
  std::string text;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) text += buf;
  const int status = pclose(pipe);
  std::istringstream lines(text);
  std::string line;
  std::size_t k = 0;
  while (std::getline(lines, line) && k < nqueries)
    if (line.find("Formula is") != std::string::npos) out[k++] = line.substr(line.find("Formula is"));
  if (k < nqueries && status != 0)
    for (std::size_t i = k; i < nqueries; ++i) out[i] = "external verifier exited with status " + std::to_string(status);
  return out;
}

int cmd_export(const std::string& model_path, const std::string& query_path, const std::string& prefix,
               const std::string& uppaal_bin) {
  FaaModel model = load_model(model_path);
  Network net = transform_faa(model);
  std::vector<Query> queries;
  if (!query_path.empty()) queries = parse_queries(read_input(query_path), log_name(query_path));

  // One observer fits the flat export; later response queries are dropped.
  std::vector<Query> exported;
  bool observer = false;
  for (const auto& q : queries) {
    if (q.kind == QueryKind::BoundedResponse) {
      if (observer) {
        std::cerr << "warning: only one bounded-response query per export; skipping " << to_string(q) << "\n";
        continue;
      }
      net = attach_observer(std::move(net), q);
      observer = true;
    }
    exported.push_back(q);
  }

  XmlExport xml = export_xml(net, version());
  for (const auto& w : xml.warnings) std::cerr << "warning: " << to_string(w) << "\n";
  const std::string stem = prefix.empty() ? model.name : prefix;
  const fs::path xml_path = stem + ".xml";
  const fs::path q_path = stem + ".q";
  write_output(xml_path.string(), xml.xml);
  if (exported.empty()) {
    std::cerr << "warning: no queries; " << q_path.string() << " not written\n";
    return kOk;
  }
  write_output(q_path.string(), export_queries(exported));
  if (!uppaal_bin.empty()) {
    auto verdicts = run_external(uppaal_bin, xml_path, q_path, exported.size());
    for (std::size_t i = 0; i < exported.size(); ++i)
      std::cout << "[" << i + 1 << "] " << to_string(exported[i]) << "\n    external: " << verdicts[i] << "\n";
  }
  return kOk;
}

int cmd_fuzz(std::uint64_t seed, int count, const std::string& dir) {
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    const std::string text = print_model(random_model(s));
    if (dir.empty()) {
      std::cout << text;
    } else {
      fs::create_directories(dir);
      write_output((fs::path(dir) / ("fuzz_" + std::to_string(s) + ".adl")).string(), text);
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adlv: architecture models to timed automata, checked and exported"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  CheckFlags cf;
  auto* check = app.add_subcommand("check", "verify queries against a model");
  check->add_option("model", cf.model, "model file (.adl) or @ssu")->required();
  check->add_option("queries", cf.queries, "query file (.q) or @ssu.q")->required();
  check->add_flag("--json", cf.json, "JSON report");
  check->add_option("--order", cf.order, "search order")->check(CLI::IsMember({"bfs", "dfs"}));
  check->add_option("--max-states", cf.max_states, "stored-state budget (env ADLV_MAX_STATES)");
  check->add_flag("--no-subsumption", cf.no_subsumption, "store zones by equality only");
  check->add_option("-o,--output", cf.output, "report file");

  std::string t_model, t_observer, t_output;
  auto* transform = app.add_subcommand("transform", "write the timed-automata dump");
  transform->add_option("model", t_model)->required();
  transform->add_option("--with-observer", t_observer, "compose the observer of a response query");
  transform->add_option("-o,--output", t_output, "dump file");

  std::string e_model, e_queries, e_prefix, e_bin;
  auto* exp = app.add_subcommand("export", "write UPPAAL .xml and .q files");
  exp->add_option("model", e_model)->required();
  exp->add_option("queries", e_queries);
  exp->add_option("-o,--output", e_prefix, "output path without extension");
  exp->add_option("--uppaal-bin", e_bin, "run this verifier on the exported files");

  std::uint64_t seed = 1;
  int count = 1;
  std::string f_dir;
  auto* fuzz = app.add_subcommand("fuzz", "print random valid models");
  fuzz->add_option("--seed", seed);
  fuzz->add_option("-n,--count", count);
  fuzz->add_option("-o,--output", f_dir, "directory for fuzz_<seed>.adl files");

  std::string which = "model";
  auto* fix = app.add_subcommand("fixture", "print the embedded SSU fixture");
  fix->add_option("part", which)->check(CLI::IsMember({"model", "queries", "extra"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }

  try {
    if (*check) return cmd_check(cf);
    if (*transform) return cmd_transform(t_model, t_observer, t_output);
    if (*exp) return cmd_export(e_model, e_queries, e_prefix, e_bin);
    if (*fuzz) return cmd_fuzz(seed, count, f_dir);
    if (*fix) {
      std::cout << (which == "model" ? fixture::kSsuModel
                    : which == "queries" ? fixture::kSsuQueries
                                         : fixture::kSsuExtraQueries);
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const TransformError& e) {
    std::cerr << "transform error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kError;
}
