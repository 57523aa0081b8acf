#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <helpercode/helpercode.hpp>

namespace {

using namespace helpercode;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

ProblemInstance resolve_instance(const std::string& spec, const std::optional<double>& delta) {
  if (!delta) return load_instance(spec);
  if (spec.rfind("example1", 0) != 0)
    fail(errc::validation, "--delta only applies to the builtin example1 family");
  if (spec.find(':') != std::string::npos)
    fail(errc::validation, "delta was given both in the instance spec and via --delta");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", *delta);
  return load_instance(spec + ":delta=" + buf);
}

MixtureDecomposition decompose_for(const ProblemInstance& inst, const std::string& scheme) {
  return scheme == "scaled" ? sinkhorn_birkhoff_decompose(inst.pmf)
                            : saturating_matching_decompose(inst.pmf);
}

void print_instance_line(const ProblemInstance& inst) {
  std::cout << "instance: " << inst.name;
  if (inst.delta) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", *inst.delta);
    std::cout << " (delta=" << buf << ")";
  }
  std::cout << "\n";
}

std::string matching_text(const MixtureComponent& comp) {
  const auto& rl = comp.pmf.row_labels();
  const auto& cl = comp.pmf.col_labels();
  std::string out;
  for (int i = 0; i < comp.pmf.n1(); ++i) {
    const int j = comp.matching->row_to_col[static_cast<size_t>(i)];
    if (!out.empty()) out += ", ";
    if (!rl.empty() && !cl.empty())
      out += rl[static_cast<size_t>(i)] + "->" + cl[static_cast<size_t>(j)];
    else
      out += std::to_string(i) + "->" + std::to_string(j);
  }
  return out;
}

int count_matched(const MixtureDecomposition& d) {
  int matched = 0;
  for (const auto& c : d.components)
    if (c.matching && c.matching->perfect) ++matched;
  return matched;
}

void cmd_rates(const ProblemInstance& inst, const std::string& scheme) {
  const MixtureDecomposition d = decompose_for(inst, scheme);
  const RateReport rep = helper_scheme_rates(d, inst.pmf, inst.f);
  print_instance_line(inst);
  const int matched = count_matched(d);
  std::cout << "decomposition: " << scheme << ", " << d.components.size() << " components (" << matched
            << " matched, " << d.components.size() - matched << " non-matched)\n";
  std::cout << "helper rate:        " << fmt(rep.helperRate) << "\n";
  std::cout << "source 1 rate:      " << fmt(rep.sourceRates[0]) << "\n";
  std::cout << "source 2 rate:      " << fmt(rep.sourceRates[1]) << "\n";
  std::cout << "sum rate:           " << fmt(rep.sumRate) << "\n";
  std::cout << "function entropy:   " << fmt(rep.baselines.functionEntropy) << "\n";
  std::cout << "fully distributed:  " << fmt(rep.baselines.fullyDistributed) << "\n";
  std::cout << "trivial upper:      " << fmt(rep.baselines.trivialUpper) << "\n";
  std::cout << "slepian-wolf:       " << fmt(rep.baselines.slepianWolf) << "\n";

  if (d.all_matched()) {
    const auto couplings = matched_marginal_couplings(inst.pmf, d);
    const auto misses = per_matching_deltas(inst.pmf, d);
    std::cout << "coupled scheme sum rate: " << fmt(coupling_scheme_sum_rate(d.weights(), couplings))
              << "\n";
    for (size_t l = 0; l < couplings.size(); ++l)
      std::cout << "  component " << l << ": tv delta " << fmt(couplings[l].delta) << ", matching miss "
                << fmt(misses[l]) << "\n";
  }
}

void cmd_decompose(const ProblemInstance& inst, const std::string& scheme) {
  print_instance_line(inst);
  if (scheme == "scaled") {
    const ScalingResult s = sinkhorn_scale(inst.pmf);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", s.residual);
    std::cout << "scaling: " << (s.converged ? "converged" : "did not converge") << " after "
              << s.iterations << " iteration(s), residual " << buf
              << (s.converged ? "" : "; falling back to saturating extraction") << "\n";
  }
  const MixtureDecomposition d = decompose_for(inst, scheme);
  const Pmf w = d.weights();
  std::cout << "scheme: " << scheme << "\n";
  std::cout << "components: " << d.components.size() << "\n";
  for (size_t l = 0; l < d.components.size(); ++l) {
    const MixtureComponent& comp = d.components[l];
    char wbuf[64];
    std::snprintf(wbuf, sizeof wbuf, "%.9f", w.at(static_cast<int>(l)));
    std::cout << "component " << l << ": weight " << wbuf << ", ";
    if (comp.matching && comp.matching->perfect)
      std::cout << "matched (" << matching_text(comp) << ")\n";
    else
      std::cout << "non-matched\n";
    for (int i = 0; i < comp.pmf.n1(); ++i) {
      std::cout << " ";
      for (int j = 0; j < comp.pmf.n2(); ++j) std::cout << " " << fmt(comp.pmf.at(i, j));
      std::cout << "\n";
    }
  }
}

void cmd_sweep(const std::string& grid, const std::string& outPath) {
  const std::vector<SweepRow> rows = sweep_example1(parse_grid(grid));
  const std::string csv = sweep_csv(rows);
  if (outPath.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream out(outPath, std::ios::binary);
  if (!out) fail(errc::io, "cannot open output file: " + outPath);
  out << csv;
  if (!out.good()) fail(errc::io, "failed writing output file: " + outPath);
  std::cout << "wrote " << rows.size() << " rows to " << outPath << "\n";
}

void cmd_simulate(const ProblemInstance& inst, const SimConfig& cfg) {
  const MixtureDecomposition d = saturating_matching_decompose(inst.pmf);
  const SimResult res = run_protocol(d, inst.f, cfg);
  print_instance_line(inst);
  std::cout << "scheme: " << (cfg.scheme == Scheme::Helper ? "helper" : "fully distributed")
            << ", samples: " << cfg.numSamples << ", seed: " << cfg.seed << ", block: " << cfg.blockLength
            << "\n";
  std::cout << "errors: " << res.errors << "\n";
  std::cout << "link       theoretical  empirical\n";
  std::cout << "helper     " << fmt(res.theoreticalBits.helper) << "     " << fmt(res.empiricalBits.helper)
            << "\n";
  std::cout << "source 1   " << fmt(res.theoreticalBits.source1) << "     "
            << fmt(res.empiricalBits.source1) << "\n";
  std::cout << "source 2   " << fmt(res.theoreticalBits.source2) << "     "
            << fmt(res.empiricalBits.source2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"communication rates for helper-aided distributed function computation"};
  app.require_subcommand(1);

  std::string instanceSpec, decompScheme = "saturating", simScheme = "helper";
  std::optional<double> delta;
  std::string grid, outPath;
  SimConfig cfg;

  CLI::App* rates = app.add_subcommand("rates", "achievable rates and baselines for an instance");
  rates->add_option("--instance", instanceSpec, "builtin name or JSON file")->required();
  rates->add_option("--delta", delta, "delta for the builtin example1 family");
  rates->add_option("--scheme", decompScheme, "decomposition: saturating or scaled")
      ->check(CLI::IsMember({"saturating", "scaled"}));

  CLI::App* decompose = app.add_subcommand("decompose", "matching mixture decomposition of an instance");
  decompose->add_option("--instance", instanceSpec, "builtin name or JSON file")->required();
  decompose->add_option("--delta", delta, "delta for the builtin example1 family");
  decompose->add_option("--scheme", decompScheme, "decomposition: saturating or scaled")
      ->check(CLI::IsMember({"saturating", "scaled"}));

  CLI::App* sweep = app.add_subcommand("sweep", "rate table over a delta grid (example1 family)");
  sweep->add_option("--instance", instanceSpec, "family to sweep")
      ->check(CLI::IsMember({"example1"}))
      ->default_val("example1");
  sweep->add_option("--grid", grid, "delta grid start:stop:step")->required();
  sweep->add_option("--out", outPath, "CSV output path (stdout when omitted)");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo run of the coding protocol");
  simulate->add_option("--instance", instanceSpec, "builtin name or JSON file")->required();
  simulate->add_option("--delta", delta, "delta for the builtin example1 family");
  simulate->add_option("--samples", cfg.numSamples, "number of source samples");
  simulate->add_option("--seed", cfg.seed, "random seed");
  simulate->add_option("--scheme", simScheme, "protocol: helper or fully")
      ->check(CLI::IsMember({"helper", "fully"}));
  simulate->add_option("--block", cfg.blockLength, "symbols per codeword (1 to 3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*rates) {
      cmd_rates(resolve_instance(instanceSpec, delta), decompScheme);
    } else if (*decompose) {
      cmd_decompose(resolve_instance(instanceSpec, delta), decompScheme);
    } else if (*sweep) {
      cmd_sweep(grid, outPath);
    } else if (*simulate) {
      cfg.scheme = simScheme == "fully" ? Scheme::FullyDistributed : Scheme::Helper;
      cmd_simulate(resolve_instance(instanceSpec, delta), cfg);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
  return 0;
}
