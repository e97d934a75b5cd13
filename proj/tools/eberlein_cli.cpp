// Batch front end: load measures and semi-measures from JSON, run
// transforms, decompositions, Fourier-Bohr series, convolutions and probes,
// and emit JSON reports plus plot-ready CSV traces. Exit codes follow the
// probe verdicts (0 pass, 1 fail, 2 inconclusive / non-convergence,
// 3 schema violation).

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "eberlein/corpus.hpp"
#include "eberlein/decomp.hpp"
#include "eberlein/json_io.hpp"
#include "eberlein/probes.hpp"

using namespace eberlein;

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("EBERLEIN_SEED")) return std::strtoull(env, nullptr, 0);
  return 0x5eed0001u;
}

json options_json(std::initializer_list<std::pair<std::string, json>> opts) {
  json j = json::object();
  for (const auto& [k, v] : opts) j[k] = v;
  return j;
}

int run_corpus(const std::string& action, const std::string& name, const std::string& out) {
  if (action == "list") {
    for (const CorpusEntry& e : corpus_entries())
      std::cout << e.name << "\t" << e.description << "\n";
    return 0;
  }
  const auto sm = corpus_build(name);
  write_json_atomic(out, artifact(json{{"semi_measure", semimeasure_to_json(sm)}}, sm.group(),
                                  options_json({{"corpus", name}}), default_seed()));
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_transform(const std::string& in, const std::string& out, bool from_dual_flag,
                  std::uint64_t seed) {
  const json input = load_json(in);
  if (from_dual_flag || input.contains("dual_measure")) {
    // semi-measure in, or raw dual measure lifted through the bijection
    SemiMeasure sm = input.contains("dual_measure")
                         ? semimeasure_from_json(input)
                         : SemiMeasure::from_dual(dual(group_from_json(input["group"])),
                                                  measure_from_json(input));
    write_json_atomic(out, artifact(json{{"semi_measure", semimeasure_to_json(sm)}}, sm.group(),
                                    options_json({{"mode", "from_dual"}}), seed));
  } else {
    const auto mu = measure_from_json(input);
    const auto hat = fourier_transform_measure(mu);
    write_json_atomic(out, artifact(json{{"measure", measure_to_json(hat)}}, mu.group,
                                    options_json({{"mode", "transform"}}), seed));
  }
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_decompose(const std::string& in, const std::string& prefix, const std::string& parts,
                  std::uint64_t seed) {
  const auto sm = semimeasure_from_json(load_json(in));
  const auto dec = generalized_eberlein(sm);
  auto emit = [&](const std::string& tag, const SemiMeasure& part) {
    if (parts.find(tag) == std::string::npos) return;
    const std::string path = prefix + "_" + tag + ".json";
    write_json_atomic(path, artifact(json{{"semi_measure", semimeasure_to_json(part)}},
                                     sm.group(), options_json({{"part", tag}}), seed));
    std::cout << "wrote " << path << "\n";
  };
  emit("pp", dec.strong);
  emit("ac", dec.null_ac);
  emit("sc", dec.null_sc);
  return 0;
}

int run_fb(const std::string& in, const std::string& out, const std::string& csv,
           double cross_check_freq, bool do_cross_check, int n_max, std::uint64_t seed) {
  const auto sm = semimeasure_from_json(load_json(in));
  const auto series = fb_series(sm);
  json payload{{"fb_series", fb_series_to_json(series)}};
  if (do_cross_check && sm.group().kind == GroupSpec::Kind::real_line) {
    const auto g = sm.group();
    const double r = g.window / 16.0;
    const auto box = CompactFunction::box(g, 0.0, r, 1.0);
    const auto f = K2Function::from_pair(box, box);
    const auto seq = VanHoveSequence::doubling(g.window / 16.0, n_max, g.window);
    const auto avg = fb_via_averaging(sm, f, Point{cross_check_freq}, seq, n_max);
    payload["cross_check"] = json{{"chi", cross_check_freq},
                                  {"averaged", {avg.averaged.real(), avg.averaged.imag()}},
                                  {"lookup_target",
                                   {avg.lookup_target.real(), avg.lookup_target.imag()}},
                                  {"gap", avg.gap}};
    if (!csv.empty()) {
      std::vector<std::vector<double>> rows;
      for (const auto& [rr, m] : avg.trace.values)
        rows.push_back({rr, m.real(), m.imag(), std::abs(m - avg.lookup_target)});
      write_csv_atomic(csv, "r,re,im,gap", rows);
      std::cout << "wrote " << csv << "\n";
    }
  }
  write_json_atomic(out, artifact(payload, sm.group(),
                                  options_json({{"n_max", n_max}}), seed));
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_convolve(const std::string& in, const std::string& with, const std::string& out,
                 std::uint64_t seed) {
  const auto sm = semimeasure_from_json(load_json(in));
  const auto f = k2_from_json(load_json(with), sm.group());
  std::vector<std::vector<double>> rows;
  if (sm.group().kind == GroupSpec::Kind::real_line) {
    const auto ts = uniform_grid(-sm.group().window / 2.0, sm.group().window / 2.0, 513);
    const auto conv = sm.convolve(f, ts);
    for (std::size_t i = 0; i < ts.size(); ++i)
      rows.push_back({ts[i], conv[i].real(), conv[i].imag()});
  } else {
    const auto conv = sm.convolve_on_grid(f);
    for (std::size_t i = 0; i < conv.size(); ++i)
      rows.push_back({static_cast<double>(i), conv[i].real(), conv[i].imag()});
  }
  write_csv_atomic(out, "t,re,im", rows);
  std::cout << "wrote " << out << "\n";
  (void)seed;
  return 0;
}

int run_bochner(const std::string& in, const std::string& out, std::uint64_t seed) {
  const auto sm = semimeasure_from_json(load_json(in));
  const auto report = sm.is_positive_definite(64, seed);
  write_json_atomic(out, artifact(json{{"report", report_to_json(report)}}, sm.group(),
                                  options_json({{"battery", 64}}), seed));
  std::cout << "wrote " << out << "\n";
  return report.exit_code();
}

int run_probe(const std::string& kind, const std::string& in, const std::string& out,
              double u_half, int n_max, double p, std::uint64_t seed) {
  ProbeReport report;
  GroupSpec group = GroupSpec::finite({1});
  if (kind == "measure") {
    const auto nu = measure_from_json(load_json(in));
    const GroupSpec primal = dual(nu.group);
    group = nu.group;
    const auto t_grid =
        primal.kind == GroupSpec::Kind::real_line
            ? dyadic_grid(primal.step, std::min(1.0, primal.window / 2.0), 6)
            : uniform_grid(-1.0, 1.0, 8);
    report = measure_probe(nu, u_half, n_max, t_grid);
  } else if (kind == "tb") {
    const auto sm = semimeasure_from_json(load_json(in));
    group = sm.group();
    const auto battery = UnitBallBattery::make(group, u_half, 32, seed);
    const auto t_grid = group.kind == GroupSpec::Kind::real_line
                            ? uniform_grid(-group.window * 0.75, group.window * 0.75, 257)
                            : uniform_grid(0.0, 1.0, 2);
    report = translation_bounded_probe(sm, battery, t_grid);
  } else if (kind == "intertwine") {
    const auto sm = semimeasure_from_json(load_json(in));
    group = sm.group();
    const auto battery = random_battery(group, 6, seed);
    std::vector<std::pair<K2Function, K2Function>> pairs;
    for (std::size_t i = 0; i + 1 < battery.size(); i += 2)
      pairs.push_back({battery[i], battery[i + 1]});
    report = intertwining_check(sm, pairs);
  } else if (kind == "density") {
    const auto nu = measure_from_json(load_json(in));
    group = nu.group;
    if (!nu.ac_density) throw SchemaError("/ac_density", "density probe needs an ac part");
    report = density_class_check(nu.group, *nu.ac_density, p);
  } else {
    throw CLI::ValidationError("probe", "unknown probe kind: " + kind);
  }
  write_json_atomic(out, artifact(json{{"report", report_to_json(report)}}, group,
                                  options_json({{"probe", kind},
                                                {"u_half", u_half},
                                                {"n_max", n_max},
                                                {"p", p}}),
                                  seed));
  std::cout << "wrote " << out << "\n";
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-measure calculus on concrete abelian groups"};
  app.require_subcommand(1);
  std::uint64_t seed = default_seed();
  app.add_option("--seed", seed, "battery seed (default: EBERLEIN_SEED or builtin)");

  std::string in, out = "out.json", with, csv, prefix = "parts", parts = "pp,ac,sc";
  std::string corpus_action = "list", corpus_name;
  double u_half = 1.0, p = 2.0, cross_freq = 0.0;
  int n_max = 8;
  bool from_dual_flag = false, do_cross = false;

  auto* corpus = app.add_subcommand("corpus", "list or build canonical instances");
  corpus->add_option("action", corpus_action)->check(CLI::IsMember({"list", "build"}));
  corpus->add_option("name", corpus_name);
  corpus->add_option("--out", out);

  auto* transform = app.add_subcommand("transform", "Fourier transform of a measure");
  transform->add_option("--in", in)->required();
  transform->add_option("--out", out);
  transform->add_flag("--from-dual", from_dual_flag,
                      "treat the input as a dual measure and lift it");

  auto* decompose = app.add_subcommand("decompose", "generalized Eberlein decomposition");
  decompose->add_option("--in", in)->required();
  decompose->add_option("--out-prefix", prefix);
  decompose->add_option("--parts", parts, "comma list from pp,ac,sc");

  auto* fb = app.add_subcommand("fb", "Fourier-Bohr series");
  fb->add_option("--in", in)->required();
  fb->add_option("--out", out);
  fb->add_option("--csv", csv, "averaging trace output");
  fb->add_option("--cross-check", cross_freq, "frequency for the averaging route")
      ->each([&](const std::string&) { do_cross = true; });
  fb->add_option("--n-max", n_max);

  auto* convolve_cmd = app.add_subcommand("convolve", "sampled theta * f");
  convolve_cmd->add_option("--in", in)->required();
  convolve_cmd->add_option("--with", with)->required();
  convolve_cmd->add_option("--out", out);

  auto* bochner = app.add_subcommand("bochner", "positive definiteness report");
  bochner->add_option("--in", in)->required();
  bochner->add_option("--out", out);

  auto* probe = app.add_subcommand("probe", "measure-ness and boundedness probes");
  std::string probe_kind;
  probe->add_option("kind", probe_kind)
      ->required()
      ->check(CLI::IsMember({"measure", "tb", "intertwine", "density"}));
  probe->add_option("--in", in)->required();
  probe->add_option("--out", out);
  probe->add_option("--u-half", u_half);
  probe->add_option("--n-max", n_max);
  probe->add_option("--p", p);

  CLI11_PARSE(app, argc, argv);

  try {
    if (corpus->parsed()) return run_corpus(corpus_action, corpus_name, out);
    if (transform->parsed()) return run_transform(in, out, from_dual_flag, seed);
    if (decompose->parsed()) return run_decompose(in, prefix, parts, seed);
    if (fb->parsed()) return run_fb(in, out, csv, cross_freq, do_cross, n_max, seed);
    if (convolve_cmd->parsed()) return run_convolve(in, with, out, seed);
    if (bochner->parsed()) return run_bochner(in, out, seed);
    if (probe->parsed()) return run_probe(probe_kind, in, out, u_half, n_max, p, seed);
  } catch (const SchemaError& e) {
    std::cerr << "schema violation at " << (e.pointer().empty() ? "/" : e.pointer()) << ": "
              << e.what() << "\n";
    return 3;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
