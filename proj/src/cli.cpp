#include "csrkit/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "csrkit/json_io.hpp"

namespace csrkit {

namespace {

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw MalformedInputError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int exit_code_for(Answer a) {
  switch (a) {
    case Answer::Yes:
      return kExitYes;
    case Answer::No:
      return kExitNo;
    case Answer::Unknown:
      return kExitUnknown;
  }
  return kExitUnknown;
}

int exit_code_for(LssAnswer a) {
  switch (a) {
    case LssAnswer::uniform:
      return kExitYes;
    case LssAnswer::not_uniform:
      return kExitNo;
    case LssAnswer::unknown:
      return kExitUnknown;
  }
  return kExitUnknown;
}

void emit(std::ostream& out, const ordered_json& j, const std::string& mode,
          const std::string& text_summary) {
  if (mode == "text") {
    out << text_summary << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
}

FamilyKind kind_from_name(const std::string& name) {
  if (name == "orthogonal") return FamilyKind::orthogonal_subgroup;
  if (name == "one_n") return FamilyKind::one_n;
  if (name == "kn") return FamilyKind::kn;
  if (name == "torsion") return FamilyKind::torsion;
  if (name == "tensor") return FamilyKind::tensor_product;
  if (name == "euler") return FamilyKind::euler;
  if (name == "jordan") return FamilyKind::jordan_counterexample;
  throw CLI::ValidationError("--kind", "unknown family kind: " + name);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"csrkit: constant-spectral-radius analysis of matrix semigroups"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  int depth = 8;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::string output = "json";
  std::size_t cap = 200000;
  app.add_option("--depth", depth, "product depth for bounds and oracles")->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "numeric tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "random seed for generation");
  app.add_option("--output", output, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--cap", cap, "product enumeration cap");

  std::string input_path = "-";
  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("input", input_path, "family file (JSON) or - for stdin");
  };

  auto* cmd_check = app.add_subcommand("check", "decide the c.s.r. property");
  add_input(cmd_check);
  auto* cmd_factor = app.add_subcommand("factor", "block upper-triangular factorization");
  add_input(cmd_factor);
  auto* cmd_radii = app.add_subcommand("radii", "joint spectral characteristics");
  add_input(cmd_radii);
  auto* cmd_fin = app.add_subcommand("finiteness", "finiteness of an integer semigroup");
  add_input(cmd_fin);

  auto* cmd_euler = app.add_subcommand("euler", "binary partition function analysis");
  int euler_r = 3;
  long euler_kmax = 1 << 20;
  std::size_t bmax = 64;
  cmd_euler->add_option("--r", euler_r, "digit bound (digits 0..r-1)")->required();
  cmd_euler->add_option("--kmax", euler_kmax, "largest k in the b table");
  cmd_euler->add_option("--bmax", bmax, "how many b values to embed in the report");

  auto* cmd_lss = app.add_subcommand("lss", "uniform linear switching system test");
  add_input(cmd_lss);
  bool lss_positive = false;
  cmd_lss->add_flag("--positive", lss_positive, "Metzler/positive-system path");

  auto* cmd_fractal = app.add_subcommand("fractal", "fractal curve regularity");
  add_input(cmd_fractal);

  auto* cmd_gen = app.add_subcommand("generate", "emit a generated family");
  std::string kind_name = "orthogonal";
  int gen_n = 2, gen_k = 2, gen_r = 3, gen_count = 2;
  std::vector<int> kvec, nvec;
  bool gen_transpose = false;
  bool gen_conjugate = false;
  cmd_gen->add_option("--kind", kind_name, "orthogonal|one_n|kn|torsion|tensor|euler|jordan");
  cmd_gen->add_option("--n", gen_n, "dimension parameter n");
  cmd_gen->add_option("--k", gen_k, "dimension parameter k");
  cmd_gen->add_option("--r", gen_r, "Euler parameter r");
  cmd_gen->add_option("--count", gen_count, "number of generators");
  cmd_gen->add_option("--kvec", kvec, "torsion k vector")->delimiter(',');
  cmd_gen->add_option("--nvec", nvec, "torsion n vector")->delimiter(',');
  cmd_gen->add_flag("--transpose", gen_transpose, "transpose the generated family");
  cmd_gen->add_flag("--conjugate", gen_conjugate,
                    "conjugate by a random unimodular integer matrix");

  std::vector<std::string> argv(args.rbegin(), args.rend());  // CLI11 wants reversed args
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitYes;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  DecisionOptions opts;
  opts.product_cap = cap;
  const RadiiOptions radii_opts{cap};

  try {
    if (cmd_check->parsed()) {
      MatrixFamily family = family_from_json_text(read_input(input_path, in));
      CsrVerdict v = decide(family, depth, tol, opts);
      ordered_json j;
      j["command"] = "check";
      j["depth"] = depth;
      j["tol"] = json_double(tol);
      j["verdict"] = verdict_to_json(v);
      emit(out, j, output, std::string("verdict: ") + answer_name(v.answer) + " (method " +
                               method_name(v.method) + ")");
      return exit_code_for(v.answer);
    }
    if (cmd_factor->parsed()) {
      MatrixFamily family = family_from_json_text(read_input(input_path, in));
      BlockFactorization f = block_factorize(family);
      ordered_json j;
      j["command"] = "factor";
      j["factorization"] = block_factorization_to_json(f);
      std::ostringstream ss;
      ss << "blocks:";
      for (Index b : f.block_sizes) ss << " " << b;
      emit(out, j, output, ss.str());
      return kExitYes;
    }
    if (cmd_radii->parsed()) {
      MatrixFamily family = family_from_json_text(read_input(input_path, in));
      RadiiReport r = radii_report(family, depth, tol, radii_opts);
      ordered_json j;
      j["command"] = "radii";
      j["report"] = radii_report_to_json(r);
      std::ostringstream ss;
      ss << "rho2=" << r.rho2.value << " rho4=" << r.rho4.value << " jsr=[" << r.jsr_lower << ","
         << r.jsr_upper << "] lsr=[" << r.lsr_lower << "," << r.lsr_upper << "]";
      emit(out, j, output, ss.str());
      return kExitYes;
    }
    if (cmd_fin->parsed()) {
      MatrixFamily family = family_from_json_text(read_input(input_path, in));
      FinitenessReport r = decide_finiteness(family, depth, tol, opts);
      ordered_json j;
      j["command"] = "finiteness";
      j["report"] = finiteness_to_json(r);
      std::string summary = j["report"]["status"].get<std::string>();
      if (r.cardinality) summary += " (cardinality " + std::to_string(*r.cardinality) + ")";
      emit(out, j, output, summary);
      switch (r.status) {
        case Finiteness::finite:
          return kExitYes;
        case Finiteness::infinite:
          return kExitNo;
        case Finiteness::unknown:
          return kExitUnknown;
      }
    }
    if (cmd_euler->parsed()) {
      PartitionReport r = euler_report(euler_r, euler_kmax, depth, tol);
      ordered_json j;
      j["command"] = "euler";
      j["report"] = partition_report_to_json(r, bmax);
      std::ostringstream ss;
      ss << "r=" << r.r << " p1~" << r.p1_estimate << " p2~" << r.p2_estimate
         << " verdict=" << answer_name(r.csr_verdict.answer);
      emit(out, j, output, ss.str());
      return exit_code_for(r.csr_verdict.answer);
    }
    if (cmd_lss->parsed()) {
      MatrixFamily family = family_from_json_text(read_input(input_path, in));
      LssReport r = lss_positive ? lss_positive_uniform(family, tol, opts)
                                 : lss_uniform(family, tol);
      ordered_json j;
      j["command"] = "lss";
      j["report"] = lss_report_to_json(r);
      emit(out, j, output, j["report"]["answer"].get<std::string>());
      return exit_code_for(r.answer);
    }
    if (cmd_fractal->parsed()) {
      auto [b0, b1] = fractal_from_json_text(read_input(input_path, in));
      FractalReport r = fractal_regularity(b0, b1, depth, tol, opts);
      ordered_json j;
      j["command"] = "fractal";
      j["report"] = fractal_report_to_json(r);
      std::ostringstream ss;
      ss << (r.constant_regularity ? "constant" : "varying") << " regularity, alpha in ["
         << r.alpha_min << ", " << r.alpha_max << "]";
      emit(out, j, output, ss.str());
      return r.constant_regularity ? kExitYes : kExitNo;
    }
    if (cmd_gen->parsed()) {
      FamilySpec spec;
      spec.kind = kind_from_name(kind_name);
      spec.n = gen_n;
      spec.k = gen_k;
      spec.r = gen_r;
      spec.count = gen_count;
      spec.k_vec = kvec;
      spec.n_vec = nvec;
      spec.seed = seed;
      if (gen_transpose) {
        auto base = std::make_shared<FamilySpec>(spec);
        spec = FamilySpec{};
        spec.kind = FamilyKind::transpose_of;
        spec.base = base;
      }
      if (gen_conjugate) {
        auto base = std::make_shared<FamilySpec>(spec);
        spec = FamilySpec{};
        spec.kind = FamilyKind::conjugated;
        spec.seed = seed;
        spec.base = base;
      }
      MatrixFamily family = generate(spec);
      ordered_json j = family_to_json(family);
      j["spec"] = family_spec_to_json(spec);
      emit(out, j, output,
           "generated " + std::to_string(family.size()) + " matrices of dim " +
               std::to_string(family_dim(family)));
      return kExitYes;
    }
  } catch (const MalformedInputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const CapExceededError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 70;
  }
  err << "no subcommand\n";
  return kExitUsage;
}

}  // namespace csrkit
