#include "ccloop/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ccloop/battery.hpp"
#include "ccloop/construct.hpp"
#include "ccloop/identities.hpp"
#include "ccloop/search.hpp"
#include "ccloop/structure.hpp"

namespace ccloop::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Report = std::map<std::string, std::string>;

void print(std::ostream& out, const Report& r) {
  for (const auto& [k, v] : r) out << k << ": " << v << '\n';
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<Elem>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

std::string describe(const Witness& w) { return w.law + " at (" + join(w.elems) + ")"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

LoopTable load(const std::string& path) { return parse_tbl(read_file(path)); }

void emit_table(const LoopTable& q, const std::string& output, std::ostream& out) {
  if (output.empty())
    out << write_tbl(q);
  else
    save_tbl(q, output);
}

// "0,1,2,3" -> elements, each checked against the order.
std::vector<Elem> parse_elems(const std::string& text, int n) {
  std::vector<Elem> xs;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw UsageError("not an element: '" + item + "'");
    }
    if (used != item.size() || v < 0 || v >= n) throw UsageError("not an element: '" + item + "'");
    xs.push_back(static_cast<Elem>(v));
  }
  if (xs.empty()) throw UsageError("empty element list");
  return xs;
}

std::vector<std::string> split_tokens(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw) {
    std::stringstream s(r);
    std::string item;
    while (std::getline(s, item, ','))
      if (!item.empty()) out.push_back(item);
  }
  return out;
}

int analyze(const std::string& path, std::ostream& out) {
  const auto q = load(path);
  const auto p = classify(q);
  const auto nu = nuclei(q);
  Report r;
  r["order"] = std::to_string(q.order());
  for (Property prop : all_properties()) {
    const std::string key(property_key(prop));
    r[key] = yes_no(p.get(prop));
    if (const auto& w = p.witness(prop)) r["witness_" + key] = describe(*w);
  }
  r["nucleus"] = nu.nucleus.to_string();
  r["nucleus_left"] = nu.left.to_string();
  r["nucleus_middle"] = nu.middle.to_string();
  r["nucleus_right"] = nu.right.to_string();
  r["center"] = center(q).to_string();
  r["commutant"] = commutant(q).to_string();
  r["wip_elements"] = wip_elements(q).to_string();
  if (p.get(Property::PA)) {
    long long e = 1;
    for (Elem x = 0; x < q.order(); ++x) e = std::lcm(e, static_cast<long long>(element_order(q, x)));
    r["exponent"] = std::to_string(e);
  }
  if (is_normal(q, nu.nucleus)) r["nucleus_index"] = std::to_string(q.order() / nu.nucleus.size());
  print(out, r);
  return kExitOk;
}

int verify(const std::string& path, const std::vector<std::string>& require,
           const std::vector<std::string>& forbid, std::ostream& out) {
  const auto q = load(path);
  Report r;
  bool ok = true;
  auto one = [&](const std::string& token, bool want) {
    std::string name = token;
    bool expect = want;
    if (token == "nonassociative") {
      name = "group";
      expect = !want;
    }
    const auto prop = property_from_name(name);
    if (!prop) throw UsageError("unknown property '" + token + "'");
    const auto [holds, witness] = check_property(q, *prop);
    const std::string key = (want ? "require_" : "forbid_") + token;
    if (holds == expect) {
      r[key] = "holds";
    } else {
      ok = false;
      r[key] = std::string("fails") + (witness ? " (" + describe(*witness) + ")" : "");
    }
  };
  for (const auto& t : split_tokens(require)) one(t, true);
  for (const auto& t : split_tokens(forbid)) one(t, false);
  if (r.empty()) throw UsageError("verify needs --require or --forbid");
  r["result"] = ok ? "holds" : "fails";
  print(out, r);
  return ok ? kExitOk : kExitFails;
}

int check(const std::string& path, const std::string& identity, std::ostream& out) {
  const auto q = load(path);
  const auto id = parse_identity(identity);
  const auto res = check_identity(q, id);
  Report r;
  r["identity"] = print_identity(id);
  r["holds"] = yes_no(res.holds);
  if (!res.holds) {
    std::string cx;
    for (std::size_t i = 0; i < id.vars.size(); ++i)
      cx += (i ? " " : "") + id.vars[i] + "=" + std::to_string(res.counterexample[i]);
    r["counterexample"] = cx;
  }
  print(out, r);
  return res.holds ? kExitOk : kExitFails;
}

int subloop(const std::string& path, const std::string& gens, std::ostream& out) {
  const auto q = load(path);
  const auto info = generate_subloop(q, parse_elems(gens, q.order()));
  Report r;
  r["generators"] = join(info.generators);
  r["members"] = info.members.to_string();
  r["order"] = std::to_string(info.members.size());
  r["is_normal"] = yes_no(info.is_normal);
  r["is_group"] = yes_no(associates(q, info.members));
  print(out, r);
  return kExitOk;
}

int quotient_cmd(const std::string& path, const std::string& members, const std::string& output,
                 std::ostream& out, std::ostream& err) {
  const auto q = load(path);
  const auto h = ElemSet::of(q.order(), parse_elems(members, q.order()));
  try {
    emit_table(quotient(q, h).table, output, out);
  } catch (const NotSubloop& e) {
    err << "not a subloop: " << e.what() << '\n';
    return kExitFails;
  } catch (const NotNormal& e) {
    err << "not normal: " << e.what() << '\n';
    return kExitFails;
  }
  return kExitOk;
}

int semidirect_cmd(const std::string& a_path, const std::string& k_path, const std::string& action_path,
                   bool theorem, const std::string& output, std::ostream& out) {
  const auto a = load(a_path);
  const auto k = load(k_path);
  const auto act = action_path.empty() ? ActionMap::trivial(a, k) : parse_action(read_file(action_path), a, k);
  if (theorem) {
    const auto t = check_semidirect_theorem(act);
    print(out, {{"cc", yes_no(t.cc)},
                {"nuclear", yes_no(t.nuclear)},
                {"triples", yes_no(t.triples)},
                {"agree", yes_no(t.agree())}});
    return kExitOk;
  }
  emit_table(semidirect(act), output, out);
  return kExitOk;
}

std::vector<Perm> parse_perms(const std::string& text, int n) {
  std::vector<Perm> gens;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<Elem> img;
    long long v;
    while (ls >> v) img.push_back(static_cast<Elem>(v));
    if (!ls.eof()) throw UsageError("bad permutation line: " + line);
    if (img.empty()) continue;
    if (static_cast<int>(img.size()) != n) throw UsageError("permutation of wrong degree: " + line);
    gens.emplace_back(std::move(img));
  }
  return gens;
}

int holomorph_cmd(const std::string& path, const std::string& subgroup_path, const std::string& output,
                  const std::string& action_out, std::ostream& out) {
  const auto q = load(path);
  std::optional<std::vector<Perm>> gens;
  if (!subgroup_path.empty()) gens = parse_perms(read_file(subgroup_path), q.order());
  const auto h = holomorph(q, gens);
  emit_table(h.table, output, out);
  if (!action_out.empty()) {
    std::ofstream f(action_out);
    if (!f) throw UsageError("cannot write " + action_out);
    f << write_action(h.action);
  }
  return kExitOk;
}

struct SearchOptions {
  std::string spec_file;
  int order = 0;
  std::vector<std::string> require, forbid, identities;
  long long limit = -1;
  bool iso_reduce = false;
  std::optional<std::uint64_t> seed;
  std::string symmetry;
  double timeout = -1;
};

int search_cmd(const SearchOptions& o, std::ostream& out) {
  SearchSpec spec;
  if (!o.spec_file.empty()) spec = parse_search_spec(read_file(o.spec_file));
  if (o.order > 0) spec.order = o.order;
  if (o.spec_file.empty() && o.order <= 0) throw UsageError("search needs --order or --spec");
  for (const auto& t : split_tokens(o.require)) add_requirement(spec, t);
  for (const auto& t : split_tokens(o.forbid)) add_forbidden(spec, t);
  for (const auto& src : o.identities) {
    spec.identities.push_back(parse_identity(src));
    spec.identity_sources.push_back(src);
  }
  if (o.limit >= 0) spec.limit = static_cast<std::size_t>(o.limit);
  if (o.iso_reduce) spec.iso_reduce = true;
  if (o.seed) spec.seed = *o.seed;
  if (o.symmetry == "none")
    spec.lex_min_row = false;
  else if (o.symmetry == "lexrow")
    spec.lex_min_row = true;
  else if (!o.symmetry.empty())
    throw UsageError("symmetry must be lexrow or none");
  if (o.timeout >= 0) spec.timeout_seconds = o.timeout;
  const auto r = find_models(spec);
  out << write_search_stream(r, spec);
  return r.models.empty() ? kExitFails : kExitOk;
}

int paper_suite(std::ostream& out) {
  const auto r = run_full_battery();
  out << format_report(r);
  return r.ok() ? kExitOk : kExitFails;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite loop toolkit: CC-loop analysis, constructions and model search", "ccloop"};
  app.require_subcommand(1, 1);

  std::string file, file2, identity, gens, members, output, action, subgroup, action_out;
  std::vector<std::string> require, forbid;
  bool theorem = false;
  SearchOptions so;

  auto* an = app.add_subcommand("analyze", "Report properties, nuclei and center of a loop");
  an->add_option("table", file, ".tbl file")->required();

  auto* ve = app.add_subcommand("verify", "Check named properties; exit 1 with a witness on failure");
  ve->add_option("table", file, ".tbl file")->required();
  ve->add_option("--require", require, "properties that must hold (comma separated)");
  ve->add_option("--forbid", forbid, "properties that must fail (comma separated)");

  auto* ch = app.add_subcommand("check", "Check an identity such as \"x*(y*z) = (x*y)*z\"");
  ch->add_option("table", file, ".tbl file")->required();
  ch->add_option("identity", identity, "identity in the term language")->required();

  auto* sl = app.add_subcommand("subloop", "Subloop generated by a set of elements");
  sl->add_option("table", file, ".tbl file")->required();
  sl->add_option("--generators", gens, "comma separated elements")->required();

  auto* qu = app.add_subcommand("quotient", "Quotient by a normal subloop, as .tbl");
  qu->add_option("table", file, ".tbl file")->required();
  qu->add_option("--subloop", members, "comma separated members")->required();
  qu->add_option("-o,--output", output, "write the table here instead of stdout");

  auto* sd = app.add_subcommand("semidirect", "Semidirect product A x| K");
  sd->add_option("a", file, "acting loop A (.tbl)")->required();
  sd->add_option("k", file2, "loop K acted on (.tbl)")->required();
  sd->add_option("--action", action, "action file, lines 'a: images'; trivial if omitted");
  sd->add_flag("--theorem", theorem, "report the three CC conditions instead of the table");
  sd->add_option("-o,--output", output, "write the table here instead of stdout");

  auto* ho = app.add_subcommand("holomorph", "NAut(Q) x| Q for a CC-loop Q");
  ho->add_option("table", file, ".tbl file")->required();
  ho->add_option("--subgroup", subgroup, "file of generating nuclear automorphisms, one image list per line");
  ho->add_option("-o,--output", output, "write the table here instead of stdout");
  ho->add_option("--action-out", action_out, "write the action sidecar here");

  auto* se = app.add_subcommand("search", "Find loops of a given order with given properties");
  se->add_option("--spec", so.spec_file, "spec file (key = value lines)");
  se->add_option("--order", so.order, "order of the loops")->check(CLI::Range(1, kSearchHardLimit));
  se->add_option("--require", so.require, "cc, pa, wip, extra, nonassociative, exponent-k, ...");
  se->add_option("--forbid", so.forbid, "properties that must fail");
  se->add_option("--identity", so.identities, "identity to impose (repeatable)");
  se->add_option("--limit", so.limit, "stop after this many models (0: all)")->check(CLI::NonNegativeNumber);
  se->add_flag("--iso-reduce", so.iso_reduce, "keep one model per isomorphism class");
  se->add_option("--seed", so.seed, "value-ordering seed");
  se->add_option("--symmetry", so.symmetry, "lexrow (default) or none");
  se->add_option("--timeout", so.timeout, "seconds")->check(CLI::NonNegativeNumber);

  auto* ps = app.add_subcommand("paper-suite", "Run the full lemma battery on the built-in fixtures");

  std::vector<std::string> argv_store{"ccloop"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (an->parsed()) return analyze(file, out);
    if (ve->parsed()) return verify(file, require, forbid, out);
    if (ch->parsed()) return check(file, identity, out);
    if (sl->parsed()) return subloop(file, gens, out);
    if (qu->parsed()) return quotient_cmd(file, members, output, out, err);
    if (sd->parsed()) return semidirect_cmd(file, file2, action, theorem, output, out);
    if (ho->parsed()) return holomorph_cmd(file, subgroup, output, action_out, out);
    if (se->parsed()) return search_cmd(so, out);
    if (ps->parsed()) return paper_suite(out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SyntaxError& e) {
    err << "identity " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotCC& e) {
    err << "not CC: " << e.what() << '\n';
    return kExitFails;
  } catch (const OrderTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LoopError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ccloop::cli
