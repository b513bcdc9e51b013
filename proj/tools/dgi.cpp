// Command-line front end: parses matrices from JSON files, dispatches to the
// dual generalized-inverse operations, and emits a deterministic JSON report
// on standard output.
//
// Exit codes: 0 success; 2 inverse does not exist or system inconsistent
// (report still emitted); 3 input parse or shape error; 4 internal numerical
// failure.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dgi/dual_solve.hpp"
#include "dgi/fixtures.hpp"
#include "dgi/io.hpp"

namespace {

using dgi::to_json;

constexpr int kExitOk = 0;
constexpr int kExitNotInvertible = 2;
constexpr int kExitParse = 3;
constexpr int kExitNumerical = 4;

struct CommonOpts {
  std::vector<std::string> inputs;
  std::string output;
  std::string batch_dir;
  double tol_rank = 1e-10;
  double tol_resid = 1e-8;
};

dgi::Tolerances tolerances(const CommonOpts& opts) {
  dgi::Tolerances tol{opts.tol_rank, opts.tol_resid};
  try {
    tol.validate();
  } catch (const dgi::Error& e) {
    throw dgi::ParseError(e.what());
  }
  return tol;
}

void add_common(CLI::App* cmd, CommonOpts& opts, int num_inputs) {
  cmd->add_option("--input", opts.inputs, "input file (JSON matrix/vector document)")
      ->expected(num_inputs == 1 ? 1 : num_inputs);
  if (num_inputs == 1) {
    cmd->add_option("--batch", opts.batch_dir,
                    "process every .json file in this directory instead of --input");
  }
  cmd->add_option("--output", opts.output, "also write the report to this file");
  cmd->add_option("--tol-rank", opts.tol_rank, "relative singular-value cutoff");
  cmd->add_option("--tol-resid", opts.tol_resid, "relative residual cutoff");
}

void emit(const dgi::JsonValue& doc, const CommonOpts& opts) {
  const std::string text = doc.dump();
  std::cout << text;
  if (!opts.output.empty()) {
    std::ofstream out(opts.output, std::ios::binary);
    out << text;
  }
}

dgi::JsonValue report_header(const std::string& command, const dgi::Tolerances& tol) {
  dgi::JsonValue doc = dgi::JsonValue::object();
  doc.set("command", dgi::JsonValue::string(command));
  doc.set("tolerances", to_json(tol));
  return doc;
}

// Single-input operations share one driver so that --batch can reuse it.
struct OpOutcome {
  dgi::JsonValue result = dgi::JsonValue::object();
  int exit_code = kExitOk;
};

OpOutcome run_real_op(const std::string& name, const dgi::DualMatrix& in,
                      const dgi::Tolerances& tol) {
  OpOutcome out;
  if (name == "rank") {
    out.result.set("value", dgi::JsonValue::integer(dgi::numerical_rank(in.real, tol)));
    return out;
  }
  if (name == "index") {
    out.result.set("value", dgi::JsonValue::integer(dgi::index(in.real, tol)));
    return out;
  }
  if (name == "pinv") {
    out.result.set("inverse", to_json(dgi::mp_inverse(in.real, tol)));
    return out;
  }
  if (name == "ginv") {
    out.result.set("inverse", to_json(dgi::group_inverse(in.real, tol)));
    return out;
  }
  if (name == "dinv") {
    const auto [inv, k] = dgi::drazin_inverse(in.real, tol);
    out.result.set("inverse", to_json(inv));
    out.result.set("k", dgi::JsonValue::integer(k));
    return out;
  }
  if (name == "coreinv") {
    out.result.set("inverse", to_json(dgi::core_inverse(in.real, tol)));
    return out;
  }
  if (name == "mpdgi") {
    out.result.set("inverse", to_json(dgi::mpdgi(in, tol)));
    return out;
  }

  dgi::InverseResult res;
  if (name == "dmpgi") res = dgi::dmpgi(in, tol);
  else if (name == "dggi") res = dgi::dggi(in, tol);
  else if (name == "dcgi") res = dgi::dcgi(in, tol);
  else if (name == "ddgi") res = dgi::ddgi(in, tol);
  else if (name == "ddmpgi") res = dgi::ddmpgi(in, tol);
  else throw dgi::Error("unknown operation: " + name);

  out.result = to_json(res);
  if (name == "ddgi") {
    out.result.set("exists_rank_test", dgi::JsonValue::boolean(dgi::ddgi_exists_rank(in, tol)));
    out.result.set("exists_aux_test", dgi::JsonValue::boolean(dgi::ddgi_exists_aux(in, tol)));
  }
  out.exit_code = res.exists ? kExitOk : kExitNotInvertible;
  return out;
}

int run_single_or_batch(const std::string& name, const CommonOpts& opts) {
  const dgi::Tolerances tol = tolerances(opts);

  if (!opts.batch_dir.empty()) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(opts.batch_dir)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    dgi::JsonValue doc = report_header(name, tol);
    dgi::JsonValue items = dgi::JsonValue::array();
    int worst = kExitOk;
    for (const auto& file : files) {
      dgi::JsonValue item = dgi::JsonValue::object();
      item.set("input_file", dgi::JsonValue::string(file.filename().string()));
      try {
        const dgi::DualMatrix in = dgi::read_dual_matrix_file(file.string());
        item.set("input", to_json(in));
        OpOutcome op = run_real_op(name, in, tol);
        item.set("result", std::move(op.result));
        item.set("exit", dgi::JsonValue::integer(op.exit_code));
        worst = std::max(worst, op.exit_code);
      } catch (const dgi::ParseError& e) {
        item.set("error", dgi::JsonValue::string(e.what()));
        item.set("exit", dgi::JsonValue::integer(kExitParse));
        worst = std::max(worst, kExitParse);
      }
      items.push(std::move(item));
    }
    doc.set("batch", std::move(items));
    emit(doc, opts);
    return worst;
  }

  const dgi::DualMatrix in = dgi::read_dual_matrix_file(opts.inputs.at(0));
  dgi::JsonValue doc = report_header(name, tol);
  dgi::JsonValue inputs = dgi::JsonValue::object();
  inputs.set("A", to_json(in));
  doc.set("inputs", std::move(inputs));
  OpOutcome op = run_real_op(name, in, tol);
  doc.set("result", std::move(op.result));
  emit(doc, opts);
  return op.exit_code;
}

int run_solve(const CommonOpts& opts, const std::string& z_file) {
  const dgi::Tolerances tol = tolerances(opts);
  const dgi::DualMatrix a = dgi::read_dual_matrix_file(opts.inputs.at(0));
  const dgi::DualVector b = dgi::read_dual_vector_file(opts.inputs.at(1));

  dgi::JsonValue doc = report_header("solve", tol);
  dgi::JsonValue inputs = dgi::JsonValue::object();
  inputs.set("A", to_json(a));
  inputs.set("b", to_json(b));

  std::optional<dgi::DualVector> z;
  if (!z_file.empty()) {
    z = dgi::read_dual_vector_file(z_file);
    inputs.set("z", to_json(*z));
  }
  doc.set("inputs", std::move(inputs));

  const bool consistent = dgi::is_consistent(a, b, tol);
  dgi::JsonValue result = dgi::JsonValue::object();
  result.set("consistent", dgi::JsonValue::boolean(consistent));
  int code = kExitOk;
  if (consistent) {
    const dgi::DualVector x =
        z ? dgi::general_solution(a, b, *z, tol) : dgi::solve_unique(a, b, tol);
    result.set("solution", to_json(x));
    const dgi::DualVector resid = subtract(multiply(a, x), b);
    result.set("residual",
               dgi::JsonValue::number(dual_norm(resid) / (1.0 + dual_norm(b))));
    result.set("in_range_power", dgi::JsonValue::boolean(dgi::in_range_power(a, x, tol)));
  } else {
    code = kExitNotInvertible;
  }
  doc.set("result", std::move(result));
  emit(doc, opts);
  return code;
}

int run_verify(const CommonOpts& opts, const std::string& kind_name, int k) {
  const dgi::Tolerances tol = tolerances(opts);
  const auto kind = dgi::inverse_kind_from_string(kind_name);
  if (!kind) throw dgi::ParseError("unknown inverse kind: " + kind_name);
  const dgi::DualMatrix a = dgi::read_dual_matrix_file(opts.inputs.at(0));
  const dgi::DualMatrix x = dgi::read_dual_matrix_file(opts.inputs.at(1));
  if (k < 0) k = dgi::index(a.real, tol);

  dgi::JsonValue doc = report_header("verify", tol);
  dgi::JsonValue inputs = dgi::JsonValue::object();
  inputs.set("A", to_json(a));
  inputs.set("X", to_json(x));
  doc.set("inputs", std::move(inputs));

  const dgi::ResidualReport rep = dgi::verify_inverse(*kind, a, x, k, tol);
  dgi::JsonValue result = dgi::JsonValue::object();
  result.set("kind", dgi::JsonValue::string(dgi::to_string(*kind)));
  result.set("k", dgi::JsonValue::integer(k));
  result.set("residuals", to_json(rep));
  result.set("max_residual", dgi::JsonValue::number(rep.max_residual()));
  result.set("within_tolerance",
             dgi::JsonValue::boolean(rep.all_within(tol.resid_rel)));
  doc.set("result", std::move(result));
  emit(doc, opts);
  return kExitOk;
}

int run_law(const CommonOpts& opts, const std::string& kind_name, bool absorption) {
  const dgi::Tolerances tol = tolerances(opts);
  const dgi::DualMatrix a = dgi::read_dual_matrix_file(opts.inputs.at(0));
  const dgi::DualMatrix c = dgi::read_dual_matrix_file(opts.inputs.at(1));

  dgi::JsonValue doc = report_header("law", tol);
  dgi::JsonValue inputs = dgi::JsonValue::object();
  inputs.set("A", to_json(a));
  inputs.set("C", to_json(c));
  doc.set("inputs", std::move(inputs));

  dgi::LawReport rep;
  if (absorption) {
    rep = dgi::absorption_check(a, c, tol);
  } else {
    const auto kind = dgi::real_inverse_kind_from_string(kind_name);
    if (!kind) throw dgi::ParseError("unknown law kind: " + kind_name);
    rep = dgi::check_order_law(*kind, a, c, tol);
  }
  dgi::JsonValue result = to_json(rep);
  result.set("law", dgi::JsonValue::string(absorption ? "absorption" : kind_name));
  doc.set("result", std::move(result));
  emit(doc, opts);
  return kExitOk;
}

int run_order(const CommonOpts& opts, const std::string& which) {
  const dgi::Tolerances tol = tolerances(opts);
  const dgi::DualMatrix x = dgi::read_dual_matrix_file(opts.inputs.at(0));
  const dgi::DualMatrix y = dgi::read_dual_matrix_file(opts.inputs.at(1));

  dgi::JsonValue doc = report_header("order", tol);
  dgi::JsonValue inputs = dgi::JsonValue::object();
  inputs.set("X", to_json(x));
  inputs.set("Y", to_json(y));
  doc.set("inputs", std::move(inputs));

  dgi::JsonValue result = dgi::JsonValue::object();
  result.set("order", dgi::JsonValue::string(which));
  if (which == "group") {
    result.set("definition", dgi::JsonValue::boolean(dgi::d_group_leq(x, y, tol)));
    result.set("characterization",
               dgi::JsonValue::boolean(dgi::d_group_leq_char(x, y, tol)));
  } else if (which == "core") {
    result.set("definition", dgi::JsonValue::boolean(dgi::d_core_leq(x, y, tol)));
    result.set("characterization",
               dgi::JsonValue::boolean(dgi::d_core_leq_char(x, y, tol)));
  } else {
    throw dgi::ParseError("order kind must be 'group' or 'core', got: " + which);
  }
  doc.set("result", std::move(result));
  emit(doc, opts);
  return kExitOk;
}

int run_gen(const CommonOpts& opts, const std::string& family, int n, int r, int k,
            const std::string& kind_name, std::uint64_t seed) {
  const dgi::Tolerances tol = tolerances(opts);
  dgi::JsonValue doc = report_header("gen", tol);
  dgi::JsonValue params = dgi::JsonValue::object();
  params.set("family", dgi::JsonValue::string(family));
  params.set("n", dgi::JsonValue::integer(n));
  params.set("r", dgi::JsonValue::integer(r));
  params.set("k", dgi::JsonValue::integer(k));
  params.set("seed", dgi::JsonValue::integer(static_cast<long long>(seed)));

  dgi::JsonValue result = dgi::JsonValue::object();
  if (family == "ddgi") {
    result.set("matrix", to_json(dgi::gen_ddgi_invertible(n, r, k, seed)));
  } else if (family == "group") {
    result.set("matrix", to_json(dgi::gen_group_invertible(n, r, seed)));
  } else if (family == "ordered") {
    const auto [x, y] = dgi::gen_ordered_pair(n, r, seed);
    result.set("X", to_json(x));
    result.set("Y", to_json(y));
  } else if (family == "commuting") {
    const auto kind = dgi::real_inverse_kind_from_string(kind_name);
    if (!kind) throw dgi::ParseError("unknown commuting kind: " + kind_name);
    params.set("kind", dgi::JsonValue::string(kind_name));
    const auto [a, c] = dgi::gen_commuting_pair(*kind, n, seed);
    result.set("A", to_json(a));
    result.set("C", to_json(c));
  } else {
    throw dgi::ParseError("unknown fixture family: " + family);
  }
  doc.set("params", std::move(params));
  doc.set("result", std::move(result));
  emit(doc, opts);
  return kExitOk;
}

dgi::JsonValue error_doc(const std::string& type, const std::string& message) {
  dgi::JsonValue doc = dgi::JsonValue::object();
  dgi::JsonValue err = dgi::JsonValue::object();
  err.set("type", dgi::JsonValue::string(type));
  err.set("message", dgi::JsonValue::string(message));
  doc.set("error", std::move(err));
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized inverses of dual matrices"};
  app.require_subcommand(1);

  const std::vector<std::string> single_ops = {"rank", "index",  "pinv", "ginv",
                                               "dinv", "coreinv", "mpdgi", "dmpgi",
                                               "dggi", "dcgi",    "ddgi",  "ddmpgi"};
  const std::vector<std::string> op_help = {
      "numerical rank of the real part",
      "index of the real part",
      "Moore-Penrose inverse of the real part",
      "group inverse of the real part",
      "Drazin inverse of the real part",
      "core inverse of the real part",
      "Moore-Penrose dual generalized inverse (formula)",
      "dual Moore-Penrose generalized inverse",
      "dual group generalized inverse",
      "dual core generalized inverse",
      "dual Drazin generalized inverse",
      "dual Drazin Moore-Penrose generalized inverse"};

  std::map<std::string, CommonOpts> op_opts;
  for (size_t i = 0; i < single_ops.size(); ++i) {
    CLI::App* cmd = app.add_subcommand(single_ops[i], op_help[i]);
    add_common(cmd, op_opts[single_ops[i]], 1);
  }

  CommonOpts solve_opts;
  std::string solve_z;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve A x = b through the DDGI");
  add_common(solve_cmd, solve_opts, 2);
  solve_cmd->add_option("--z", solve_z, "parameter vector for the general solution");

  CommonOpts verify_opts;
  std::string verify_kind;
  int verify_k = -1;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "check a candidate inverse against its equations");
  add_common(verify_cmd, verify_opts, 2);
  verify_cmd->add_option("--kind", verify_kind, "inverse kind")->required();
  verify_cmd->add_option("--k", verify_k, "index to use (default: index of A)");

  CommonOpts law_opts;
  std::string law_kind;
  bool law_absorption = false;
  CLI::App* law_cmd = app.add_subcommand("law", "order-law and absorption checks");
  add_common(law_cmd, law_opts, 2);
  law_cmd->add_option("--kind", law_kind, "mp | group | drazin | core");
  law_cmd->add_flag("--absorption", law_absorption, "check the absorption identity");

  CommonOpts order_opts;
  std::string order_kind;
  CLI::App* order_cmd = app.add_subcommand("order", "D-group / D-core partial orders");
  add_common(order_cmd, order_opts, 2);
  order_cmd->add_option("--kind", order_kind, "group | core")->required();

  CommonOpts gen_opts;
  std::string gen_family, gen_kind = "group";
  int gen_n = 4, gen_r = 2, gen_k = 1;
  std::uint64_t gen_seed = 1;
  CLI::App* gen_cmd = app.add_subcommand("gen", "seeded structured fixtures");
  gen_cmd->add_option("--family", gen_family, "ddgi | group | ordered | commuting")
      ->required();
  gen_cmd->add_option("--n", gen_n, "matrix size");
  gen_cmd->add_option("--r", gen_r, "core rank");
  gen_cmd->add_option("--k", gen_k, "nilpotency index (ddgi family)");
  gen_cmd->add_option("--kind", gen_kind, "commuting family kind");
  gen_cmd->add_option("--seed", gen_seed, "fixture seed");
  gen_cmd->add_option("--output", gen_opts.output, "also write the report to this file");
  gen_cmd->add_option("--tol-rank", gen_opts.tol_rank, "relative singular-value cutoff");
  gen_cmd->add_option("--tol-resid", gen_opts.tol_resid, "relative residual cutoff");

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "solve") return run_solve(solve_opts, solve_z);
    if (name == "verify") return run_verify(verify_opts, verify_kind, verify_k);
    if (name == "law") {
      if (!law_absorption && law_kind.empty())
        throw dgi::ParseError("law: either --kind or --absorption is required");
      return run_law(law_opts, law_kind, law_absorption);
    }
    if (name == "order") return run_order(order_opts, order_kind);
    if (name == "gen")
      return run_gen(gen_opts, gen_family, gen_n, gen_r, gen_k, gen_kind, gen_seed);
    if (op_opts.count(name)) {
      const CommonOpts& opts = op_opts[name];
      if (opts.inputs.empty() && opts.batch_dir.empty())
        throw dgi::ParseError(name + ": --input (or --batch) is required");
      return run_single_or_batch(name, opts);
    }
    throw dgi::ParseError("unknown subcommand: " + name);
  } catch (const dgi::ParseError& e) {
    std::cout << error_doc("parse", e.what()).dump();
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const dgi::ShapeMismatch& e) {
    std::cout << error_doc("shape", e.what()).dump();
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const dgi::BadShapeParams& e) {
    std::cout << error_doc("shape_params", e.what()).dump();
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const dgi::NoGroupInverse& e) {
    std::cout << error_doc("no_group_inverse", e.what()).dump();
    return kExitNotInvertible;
  } catch (const dgi::NoCoreInverse& e) {
    std::cout << error_doc("no_core_inverse", e.what()).dump();
    return kExitNotInvertible;
  } catch (const dgi::NoDggi& e) {
    std::cout << error_doc("no_dggi", e.what()).dump();
    return kExitNotInvertible;
  } catch (const dgi::NoDcgi& e) {
    std::cout << error_doc("no_dcgi", e.what()).dump();
    return kExitNotInvertible;
  } catch (const dgi::NoDdgi& e) {
    std::cout << error_doc("no_ddgi", e.what()).dump();
    return kExitNotInvertible;
  } catch (const dgi::Inconsistent& e) {
    std::cout << error_doc("inconsistent", e.what()).dump();
    return kExitNotInvertible;
  } catch (const dgi::HypothesisFailed& e) {
    std::cout << error_doc("hypothesis_failed", e.what()).dump();
    return kExitNotInvertible;
  } catch (const dgi::DecompositionFailure& e) {
    std::cout << error_doc("decomposition_failure", e.what()).dump();
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cout << error_doc("internal", e.what()).dump();
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
