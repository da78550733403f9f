// diophc — compile, encode, solve, and verify positive-existential
// definitions and structure maps from the command line.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dioph/maps.hpp"
#include "dioph/set_algebra.hpp"
#include "dioph/structures.hpp"
#include "dioph/textio.hpp"
#include "dioph/verify.hpp"

namespace {

using namespace dioph;

std::string slurp(const std::string& arg) {
  // Inline S-expressions are accepted anywhere a file path is.
  if (!arg.empty() && arg[0] == '(') return arg;
  std::ifstream in(arg);
  if (!in) fail(ErrKind::Usage, "cannot open " + arg);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Numbering numbering_for(const std::string& lang_name, const std::string& interp_name) {
  if (!interp_name.empty()) return Numbering::of(*stdlib_interp(interp_name));
  if (lang_name == "LR") return Numbering::make(lang_rings());
  if (!lang_name.empty()) fail(ErrKind::Usage, "unknown language name: " + lang_name);
  fail(ErrKind::Usage, "need --interp or --lang");
}

DiophDefinition load_system(const std::string& arg, const std::optional<Language>& fallback) {
  return system_from_text(slurp(arg), fallback);
}

std::vector<mpz_class> parse_codes(const std::string& text) {
  std::vector<mpz_class> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    try {
      out.emplace_back(tok);
    } catch (const std::exception&) {
      fail(ErrKind::Usage, "bad code: " + tok);
    }
  }
  if (out.empty()) fail(ErrKind::Usage, "empty code sequence");
  return out;
}

void print_codes(const std::vector<mpz_class>& codes) {
  for (size_t i = 0; i < codes.size(); ++i) std::cout << (i ? " " : "") << codes[i];
  std::cout << "\n";
}

std::string elems_str(const std::vector<Elem>& t) {
  std::string s;
  for (size_t i = 0; i < t.size(); ++i) s += (i ? " " : "") + to_string(t[i]);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic compiler and bounded verifier for positive-existential definitions"};
  app.require_subcommand(1);

  std::string interp_name, lang_name, map_name, system_arg, system2_arg, term_str, code_str,
      op_name, coeffs_str, points_str, format = "text", inverse_name;
  std::uint64_t box_n = 17, ebox_n = 0, tbox_n = 0, tebox_n = 0;
  int free_k = 0, keep = 0;
  bool coded = false, effective = false;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--interp", interp_name, "structure name (see `stdlib list`)");
    return c;
  };

  auto* c_check = add_common(app.add_subcommand("check", "validate a definition"));
  c_check->add_option("--system", system_arg, "definition file or inline text")->required();
  c_check->add_flag("--effective", effective, "also reject coefficient leaves");

  auto* c_enc = add_common(app.add_subcommand("encode", "number a term or system"));
  c_enc->add_option("--lang", lang_name, "language name (LR = {0,1,+,*})");
  c_enc->add_option("--term", term_str, "term to encode");
  c_enc->add_option("--system", system_arg, "definition to encode as a code sequence");

  auto* c_dec = add_common(app.add_subcommand("decode", "recover a term or system from codes"));
  c_dec->add_option("--lang", lang_name, "language name (LR = {0,1,+,*})");
  c_dec->add_option("--code", code_str, "term code, or a whitespace-separated system sequence");
  c_dec->add_option("--free", free_k, "free-variable count of a system code");

  auto* c_tr = add_common(app.add_subcommand("translate", "compile a system through a map"));
  c_tr->add_option("--map", map_name, "map name (see `stdlib list`)")->required();
  c_tr->add_option("--system", system_arg, "source system (text, or codes with --coded)")
      ->required();
  c_tr->add_flag("--coded", coded, "input/output are code sequences");
  c_tr->add_option("--free", free_k, "free-variable count (required with --coded)");
  c_tr->add_option("--format", format, "output format: text | codes");

  auto* c_solve = add_common(app.add_subcommand("solve", "first witness within a box"));
  c_solve->add_option("--system", system_arg)->required();
  c_solve->add_option("--box", box_n, "elements per variable (default 17)");
  c_solve->add_option("--ebox", ebox_n, "separate bound for existential variables");

  auto* c_pts = add_common(app.add_subcommand("points", "bounded solution set"));
  c_pts->add_option("--system", system_arg)->required();
  c_pts->add_option("--box", box_n);
  c_pts->add_option("--ebox", ebox_n);

  auto* c_alg = add_common(app.add_subcommand("algebra", "closure operations on definitions"));
  c_alg->add_option("--op", op_name,
                    "intersect | union | product | project | finite-set | combine-single | "
                    "fuse | normalize")
      ->required();
  c_alg->add_option("--system", system_arg);
  c_alg->add_option("--system2", system2_arg);
  c_alg->add_option("--keep", keep, "free variables kept by project");
  c_alg->add_option("--coeffs", coeffs_str, "comma-separated witness coefficients (low degree first)");
  c_alg->add_option("--points", points_str, "semicolon-separated tuples, e.g. \"0;1\" or \"0,1;2,3\"");

  auto* c_ver = add_common(app.add_subcommand("verify", "bounded map verification"));
  c_ver->add_option("--map", map_name)->required();
  c_ver->add_option("--system", system_arg, "verify the two translation conditions on this system");
  c_ver->add_option("--inverse", inverse_name, "verify an automorphism against this inverse map");
  c_ver->add_option("--box", box_n, "source box size");
  c_ver->add_option("--ebox", ebox_n);
  c_ver->add_option("--tbox", tbox_n, "target box size (default: source box)");
  c_ver->add_option("--tebox", tebox_n);

  auto* c_std = app.add_subcommand("stdlib", "list built-in structures and maps");
  c_std->add_subcommand("list", "print the catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (c_check->parsed()) {
      auto R = interp_name.empty() ? nullptr : stdlib_interp(interp_name);
      auto d = load_system(system_arg, R ? std::optional<Language>(R->lang) : std::nullopt);
      auto diags = validate(d, effective);
      if (R && !(d.lang == R->lang)) diags.push_back("language differs from " + R->name + "'s");
      if (diags.empty()) {
        std::cout << "OK: " << d.free_count << " free, " << d.exist_count << " existential, "
                  << d.atoms.size() << " atoms\n";
        return 0;
      }
      for (auto& m : diags) std::cout << "INVALID: " << m << "\n";
      return 1;
    }

    if (c_enc->parsed()) {
      Numbering N = numbering_for(lang_name, interp_name);
      if (!term_str.empty()) {
        std::cout << encode_term(N, term_from_sexp(parse_sexp(term_str))) << "\n";
        return 0;
      }
      if (!system_arg.empty()) {
        print_codes(encode_system(N, load_system(system_arg, N.lang)));
        return 0;
      }
      fail(ErrKind::Usage, "encode needs --term or --system");
    }

    if (c_dec->parsed()) {
      Numbering N = numbering_for(lang_name, interp_name);
      auto codes = parse_codes(code_str.empty() ? slurp(system_arg) : code_str);
      if (codes.size() == 1 && !c_dec->count("--free")) {
        std::cout << to_text(decode_term(N, codes[0])) << "\n";
        return 0;
      }
      std::cout << to_text(decode_system(N, codes, free_k));
      return 0;
    }

    if (c_tr->parsed()) {
      MapSpec spec = stdlib_map_is_equiv(map_name) ? stdlib_equiv_map(map_name)
                                                   : stdlib_map(map_name);
      bool out_codes = coded || format == "codes";
      if (format != "text" && format != "codes") fail(ErrKind::Usage, "bad --format");
      DiophDefinition sys =
          coded ? decode_system(Numbering::of(*spec.src), parse_codes(slurp(system_arg)), free_k)
                : load_system(system_arg, spec.src->lang);
      DiophDefinition out = stdlib_map_is_equiv(map_name)
                                ? translate_system_equiv(stdlib_equiv_map(map_name), sys)
                                : translate_system(spec, sys);
      if (out_codes) print_codes(encode_system(Numbering::of(*spec.dst), out));
      else std::cout << to_text(out);
      return 0;
    }

    if (c_solve->parsed() || c_pts->parsed()) {
      auto R = stdlib_interp(interp_name);
      auto d = load_system(system_arg, R->lang);
      Box box{R, box_n, ebox_n};
      if (c_solve->parsed()) {
        auto res = solve_bounded(d, box);
        if (res.found) std::cout << "witness: " << elems_str(res.witness) << "\n";
        else std::cout << "exhausted (" << res.examined << " assignments)\n";
        return 0;
      }
      auto res = solution_set(d, box);
      for (auto& t : res.points) std::cout << elems_str(t) << "\n";
      std::cout << (res.exact ? ";; exact" : ";; frontier warnings: ")
                << (res.exact ? std::string() : std::to_string(res.frontier_warnings)) << "\n";
      return 0;
    }

    if (c_alg->parsed()) {
      auto R = stdlib_interp(interp_name.empty() ? "int" : interp_name);
      auto need1 = [&] { return load_system(system_arg, R->lang); };
      auto need2 = [&] { return load_system(system2_arg, R->lang); };
      DiophDefinition out;
      if (op_name == "intersect") out = intersect(need1(), need2());
      else if (op_name == "union") out = union_defs(need1(), need2(), *R);
      else if (op_name == "product") out = product(need1(), need2());
      else if (op_name == "project") out = project(need1(), keep);
      else if (op_name == "fuse") out = fuse_equalities(need1(), *R);
      else if (op_name == "normalize") out = normalize_one_sided(need1(), *R);
      else if (op_name == "combine-single") {
        std::vector<long long> coeffs{1, 0, 1};
        if (!coeffs_str.empty()) {
          coeffs.clear();
          std::istringstream in(coeffs_str);
          std::string tok;
          while (std::getline(in, tok, ',')) coeffs.push_back(std::stoll(tok));
        }
        out = combine_single(need1(), *R, coeffs);
      } else if (op_name == "finite-set") {
        std::vector<std::vector<Elem>> pts;
        std::istringstream in(points_str);
        std::string tup;
        while (std::getline(in, tup, ';')) {
          std::vector<long long> xs;
          std::istringstream tin(tup);
          std::string tok;
          while (std::getline(tin, tok, ',')) xs.push_back(std::stoll(tok));
          std::vector<Elem> row;
          for (auto x : xs) row.push_back(Elem(x));
          pts.push_back(std::move(row));
        }
        out = finite_set(*R, pts);
      } else {
        fail(ErrKind::Usage, "unknown operation: " + op_name);
      }
      std::cout << to_text(out);
      return 0;
    }

    if (c_ver->parsed()) {
      bool ok = true;
      if (!inverse_name.empty()) {
        MapSpec f = stdlib_map(map_name);
        MapSpec g = stdlib_map(inverse_name);
        Box box{f.src, box_n, ebox_n};
        auto rep = verify_automorphism_bounded(f, g, box);
        std::cout << rep.line() << "\n";
        ok = rep.pass;
      } else if (!system_arg.empty()) {
        std::vector<VerificationReport> reps;
        if (stdlib_map_is_equiv(map_name)) {
          EquivMapSpec spec = stdlib_equiv_map(map_name);
          auto sys = load_system(system_arg, spec.src->lang);
          reps = verify_translation(spec, sys, Box{spec.src, box_n, ebox_n},
                                    Box{spec.dst, tbox_n ? tbox_n : box_n, tebox_n});
        } else {
          MapSpec spec = stdlib_map(map_name);
          auto sys = load_system(system_arg, spec.src->lang);
          reps = verify_translation(spec, sys, Box{spec.src, box_n, ebox_n},
                                    Box{spec.dst, tbox_n ? tbox_n : box_n, tebox_n});
        }
        for (auto& r : reps) {
          std::cout << r.line() << "\n";
          ok = ok && r.pass;
        }
      } else {
        fail(ErrKind::Usage, "verify needs --system or --inverse");
      }
      return ok ? 0 : 1;
    }

    if (c_std->parsed()) {
      std::cout << "structures:\n";
      for (auto& e : stdlib_interp_list())
        std::cout << "  " << e.name << " — " << e.description << "\n";
      std::cout << "maps:\n";
      for (auto& e : stdlib_map_list())
        std::cout << "  " << e.name << (e.equiv ? " (quotient)" : "") << " — " << e.description
                  << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind == ErrKind::Usage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
