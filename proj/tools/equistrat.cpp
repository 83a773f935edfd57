#include "equistrat/errors.hpp"
#include "equistrat/pipeline.hpp"
#include "equistrat/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace equistrat;

namespace {

struct Args {
  std::string spec_path;
  std::optional<int> degree;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::string out;
  std::string format;
};

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  fs::create_directories(dir);
  const fs::path path = fs::path(dir) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  f << content;
  std::cerr << "wrote " << path.string() << "\n";
}

Problem load(const Args& a) {
  ProblemSpec spec = load_spec(a.spec_path);
  if (a.seed) spec.options.seed = *a.seed;
  if (a.samples) spec.options.samples = *a.samples;
  if (spec.name.empty()) spec.name = fs::path(a.spec_path).stem().string();
  return build_problem(spec);
}

void cmd_lattice(const Args& a) {
  const Problem p = load(a);
  const IsotropyLattice lat = build_lattice(p.V, p.W);
  const std::string fmt = a.format.empty() ? "md" : a.format;
  if (fmt == "dot") std::cout << lattice_to_dot(lat);
  else if (fmt == "json") std::cout << lattice_json(lat) << "\n";
  else std::cout << lattice_to_text(lat);
  if (!a.out.empty()) {
    write_file(a.out, p.spec.name + ".lattice.dot", lattice_to_dot(lat));
    write_file(a.out, p.spec.name + ".lattice.json", lattice_json(lat) + "\n");
    write_file(a.out, p.spec.name + ".lattice.txt", lattice_to_text(lat));
  }
}

void cmd_equivariants(const Args& a) {
  const Problem p = load(a);
  const AnalysisOptions opts = analysis_options(p.spec.options);
  const int d = a.degree ? *a.degree : lowest_degree(p.V, p.W, opts.degree_max);
  const EquivariantBasis basis = equivariant_basis(p.V, p.W, d, opts.budget);
  const GeneratorCount gc = generator_count(p.V, p.W, d, opts.budget);
  std::ostringstream os;
  os << "# " << p.spec.name << ": degree " << d << "\n";
  os << "# trace formula " << gc.homogeneous_trace << ", averaging rank " << gc.homogeneous_rank << "\n";
  os << "# generators beyond invariant multiples: " << gc.by_trace() << " (trace), " << gc.by_rank() << " (rank)\n";
  os << basis_dump(basis);
  std::cout << os.str();
  if (!a.out.empty()) write_file(a.out, p.spec.name + ".basis.d" + std::to_string(d) + ".txt", os.str());
}

void cmd_analyze(const Args& a) {
  const Problem p = load(a);
  const AnalysisReport rep = analyze_problem(p);
  const std::string json = report_json(rep) + "\n";
  const std::string md = report_markdown(rep);
  if (a.format == "json") std::cout << json;
  else if (a.format == "dot") std::cout << lattice_to_dot(rep.lattice);
  else std::cout << md;
  if (!a.out.empty()) {
    write_file(a.out, p.spec.name + ".report.json", json);
    write_file(a.out, p.spec.name + ".report.md", md);
    write_file(a.out, p.spec.name + ".lattice.dot", lattice_to_dot(rep.lattice));
  }
}

void cmd_probe(const Args& a) {
  Problem p = load(a);
  if (a.samples) p.spec.options.probe_draws = *a.samples;
  const ProbeRun run = probe_problem(p);
  const IsotropyLattice lat = build_lattice(p.V, p.W);
  const std::uint64_t seed = p.spec.options.seed;
  const std::string json = probe_json(run, lat, seed) + "\n";
  const std::string md = probe_markdown(run, seed);
  if (a.format == "json") std::cout << json;
  else std::cout << md;
  if (!a.out.empty()) {
    std::string csv = probe_csv_header(p.V.dim());
    for (std::size_t d = 0; d < run.samples.size(); ++d) csv += probe_csv_rows(run.samples[d], static_cast<int>(d));
    write_file(a.out, p.spec.name + ".probe.csv", csv);
    write_file(a.out, p.spec.name + ".probe.json", json);
    write_file(a.out, p.spec.name + ".probe.md", md);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-set strata of equivariant maps between representations of finite groups"};
  app.require_subcommand(1);
  Args args;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("spec", args.spec_path, "problem spec file")->required();
    sub->add_option_function<int>("--degree", [&](const int& d) { args.degree = d; }, "polynomial degree");
    sub->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) { args.seed = s; }, "random seed");
    sub->add_option_function<int>("--samples", [&](const int& s) { args.samples = s; },
                                  "coefficient samples (analyze) or draws (probe)");
    sub->add_option("--out", args.out, "output directory");
    sub->add_option("--format", args.format, "stdout format")->check(CLI::IsMember({"json", "md", "dot"}));
  };
  auto* lattice = app.add_subcommand("lattice", "isotropy lattice with indices");
  auto* equiv = app.add_subcommand("equivariants", "basis of homogeneous equivariant maps");
  auto* analyze = app.add_subcommand("analyze", "stratum inclusion verdicts");
  auto* probe = app.add_subcommand("probe", "numeric zero-branch dimensions");
  for (auto* s : {lattice, equiv, analyze, probe}) add_common(s);

  CLI11_PARSE(app, argc, argv);
  try {
    if (lattice->parsed()) cmd_lattice(args);
    else if (equiv->parsed()) cmd_equivariants(args);
    else if (analyze->parsed()) cmd_analyze(args);
    else if (probe->parsed()) cmd_probe(args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::SpecError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
