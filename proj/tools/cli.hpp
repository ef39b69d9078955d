#ifndef EXPCOMB_TOOLS_CLI_HPP
#define EXPCOMB_TOOLS_CLI_HPP

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <expcomb/expcomb.hpp>

namespace expcomb::cli {

using Json = nlohmann::ordered_json;

struct Options {
  bool json = false;
  bool quiet = false;
};

namespace detail {

inline std::string rat(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Int to_int(const std::string& s) {
  Int v;
  if (!expcomb::detail::parse_int(s, v)) throw ParseError("expected an integer, got '" + s + "'", 0);
  return v;
}

// An integer or a half-integer "k/2".
inline Entry to_entry(const std::string& s) {
  Int v;
  if (expcomb::detail::parse_int(s, v)) return Entry::integer(v);
  Entry e;
  if (expcomb::detail::parse_half(s, e)) return e;
  throw ParseError("expected an integer or half-integer, got '" + s + "'", 0);
}

inline Rational to_angle(const std::string& s) {
  Int p, q;
  if (!expcomb::detail::parse_fraction(s, p, q)) throw ParseError("expected p/q, got '" + s + "'", 0);
  const Rational r(p, q);
  if (r.denominator() != q) throw DomainError("angle " + s + " is not in lowest terms");
  return r;
}

inline Rational to_height(const std::string& s) {
  const auto h = expcomb::detail::parse_height(s);
  if (!h) throw ParseError("expected a height like 1/3, 2+1/3 or -1-1/2, got '" + s + "'", 0);
  return *h;
}

inline Json classification_json(const IntermediateAddress& s) {
  Json j;
  if (s.length() < 2) return nullptr;
  const Classification c = classify(s);
  if (const auto* sat = std::get_if<Satellite>(&c)) {
    j["type"] = "satellite";
    j["parent"] = format(sat->parent);
    j["rotation"] = rat(sat->rotation);
  } else {
    j["type"] = "primitive";
  }
  return j;
}

inline std::string classification_text(const IntermediateAddress& s) {
  const Classification c = classify(s);
  if (const auto* sat = std::get_if<Satellite>(&c))
    return "satellite parent=" + format(sat->parent) + " rotation=" + rat(sat->rotation);
  return "primitive";
}

inline Json sector_json(const SectorRef& a, const HyperbolicComponent& w) {
  Json j;
  j["component"] = format(a.component);
  j["height_index"] = a.height_index;
  j["label"] = a.label.str();
  j["kneading_entry"] = a.kneading_entry;
  j["sector_number"] = a.sector_number;
  j["lower"] = format(a.lower);
  j["upper"] = format(a.upper);
  j["kneading"] = format(sector_kneading(w, a));
  return j;
}

inline std::string kv_lines(const Json& j) {
  std::string s;
  for (const auto& [k, v] : j.items()) {
    s += k + "=";
    s += v.is_string() ? v.get<std::string>() : v.dump();
    s += "\n";
  }
  return s;
}

// Selects a sector by exactly one of the four labelings.
struct SectorSelector {
  std::optional<std::string> height, label, kneading_entry, sector_number;

  void add(CLI::App* c) {
    auto* g = c->add_option_group("sector", "sector selection");
    g->add_option("--height", height, "height index k");
    g->add_option("--label", label, "sector label");
    g->add_option("--kneading-entry", kneading_entry, "kneading entry u(A)");
    g->add_option("--sector-number", sector_number, "sector number u(A)-u(W)");
    g->require_option(1);
  }

  SectorKey key() const {
    if (height) return SectorKey::height(to_int(*height));
    if (label) return SectorKey::label(to_entry(*label));
    if (kneading_entry) return SectorKey::kneading_entry(to_int(*kneading_entry));
    return SectorKey::sector_number(to_int(*sector_number));
  }
};

inline Json describe(const HyperbolicComponent& w) {
  Json j;
  j["address"] = format(w.addr());
  j["period"] = w.period();
  j["kneading"] = format(w.kneading_sequence());
  j["forbidden_kneading"] = w.period() >= 2 ? Json(format(w.forbidden_kneading())) : Json(nullptr);
  if (w.period() >= 2) {
    j["characteristic"] = {{"lower", format(w.characteristic().lower)},
                           {"upper", format(w.characteristic().upper)}};
  } else {
    j["characteristic"] = nullptr;
  }
  j["internal_address"] = format(w.internal_address());
  j["angled_internal_address"] = format(angled_internal(w.addr()));
  j["classification"] = classification_json(w.addr());
  return j;
}

inline std::string tree_dot(const std::vector<HyperbolicComponent>& nodes,
                            const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                            const std::vector<Rational>& rot) {
  std::ostringstream o;
  o << "digraph bifurcation {\n";
  for (const auto& w : nodes) {
    const auto a = format(w.addr());
    o << "  \"" << a << "\" [label=\"" << a << "\\nperiod " << w.period() << "\\n"
      << format(w.internal_address()) << "\"];\n";
  }
  for (std::size_t e = 0; e < edges.size(); ++e)
    o << "  \"" << format(nodes[edges[e].first].addr()) << "\" -> \""
      << format(nodes[edges[e].second].addr()) << "\" [label=\"" << rat(rot[e]) << "\"];\n";
  o << "}";
  return o.str();
}

}  // namespace detail

/// Runs one command line (without the program name). Returns the exit code:
/// 0 on success, 1 on domain errors, 2 on parse errors.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  Options opt;
  CLI::App app{"Combinatorics of exponential parameter space"};
  app.name("expcomb");
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", opt.json, "emit JSON records");
  app.add_flag("--quiet", opt.quiet, "suppress diagnostics on stderr");

  std::function<void()> action;
  auto emit = [&](const std::string& text, const Json& j) {
    if (opt.json)
      out << j.dump(2) << "\n";
    else if (!text.empty())
      out << text << (text.back() == '\n' ? "" : "\n");
  };

  std::string a1, a2, a3;
  std::string side = "lower", seed = "below", variant = "upper", format_opt = "dot";
  std::optional<std::string> height;
  Int times = 1;
  std::size_t max = 5;
  Int bound = 2;
  bool list = false, target_component = false;
  SectorSelector sel;

  auto add = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };
  auto pos = [](CLI::App* c, const char* name, std::string& v, const char* help) {
    c->add_option(name, v, help)->required();
  };

  {
    auto* c = add("kneading", "kneading sequence of an address");
    pos(c, "address", a1, "address literal");
    c->callback([&] {
      action = [&] {
        const Address a = parse_address(a1);
        const auto k = kneading(a);
        emit(format(k), {{"address", format(a)}, {"kneading", format(k)}});
      };
    });
  }
  {
    auto* c = add("kneading-pm", "one-sided kneading sequence K+ or K-");
    pos(c, "address", a1, "address literal");
    c->add_option("--side", side, "lower or upper")->check(CLI::IsMember({"lower", "upper"}));
    c->callback([&] {
      action = [&] {
        const Address a = parse_address(a1);
        const auto k = kneading_pm(a, side == "upper" ? Side::Upper : Side::Lower);
        emit(format(k), {{"address", format(a)}, {"side", side}, {"kneading", format(k)}});
      };
    });
  }
  {
    auto* c = add("itinerary", "itinerary of an address with respect to a base address");
    pos(c, "address", a1, "address literal");
    pos(c, "base", a2, "base address literal");
    c->callback([&] {
      action = [&] {
        const Address r = parse_address(a1), s = parse_address(a2);
        const auto u = itinerary(r, s);
        emit(format(u), {{"address", format(r)}, {"base", format(s)}, {"itinerary", format(u)}});
      };
    });
  }
  {
    auto* c = add("solve", "address realizing an itinerary with respect to a base");
    pos(c, "itinerary", a1, "itinerary literal");
    pos(c, "base", a2, "base address literal");
    c->add_option("--seed", seed, "below or above")->check(CLI::IsMember({"below", "above"}));
    c->callback([&] {
      action = [&] {
        const Itinerary u = parse_itinerary(a1);
        const Address s = parse_address(a2);
        const Address r = solve_itinerary(u, s, seed == "above" ? SeedSide::FromAbove : SeedSide::FromBelow);
        emit(format(r), {{"itinerary", format(u)}, {"base", format(s)}, {"address", format(r)}});
      };
    });
  }
  {
    auto* c = add("shift", "shift an address");
    pos(c, "address", a1, "address literal");
    c->add_option("--times", times, "number of shifts")->check(CLI::NonNegativeNumber);
    c->callback([&] {
      action = [&] {
        const Address r = shift(parse_address(a1), static_cast<std::size_t>(times));
        emit(format(r), {{"address", format(r)}});
      };
    });
  }
  {
    auto* c = add("prepend", "prepend an entry to an address");
    pos(c, "entry", a1, "integer, or half-integer before inf");
    pos(c, "address", a2, "address literal");
    c->callback([&] {
      action = [&] {
        const Address r = prepend(to_entry(a1), parse_address(a2));
        emit(format(r), {{"address", format(r)}});
      };
    });
  }
  {
    auto* c = add("compare", "order of two addresses");
    pos(c, "a", a1, "address literal");
    pos(c, "b", a2, "address literal");
    c->callback([&] {
      action = [&] {
        const Address x = parse_address(a1), y = parse_address(a2);
        const auto o = compare(x, y);
        const int v = o < 0 ? -1 : (o > 0 ? 1 : 0);
        const std::string sym = v < 0 ? "<" : (v > 0 ? ">" : "=");
        emit(sym, {{"a", format(x)}, {"b", format(y)}, {"order", v}});
      };
    });
  }
  {
    auto* c = add("circular", "whether a, b, c are in positive circular order");
    pos(c, "a", a1, "address literal");
    pos(c, "b", a2, "address literal");
    pos(c, "c", a3, "address literal");
    c->callback([&] {
      action = [&] {
        const bool r = circular_order(parse_address(a1), parse_address(a2), parse_address(a3));
        emit(r ? "true" : "false", {{"circular", r}});
      };
    });
  }
  {
    auto* c = add("internal", "internal address of an address");
    pos(c, "address", a1, "address literal");
    c->callback([&] {
      action = [&] {
        const Address a = parse_address(a1);
        const auto ia = internal_from_kneading(kneading(a));
        emit(format(ia), {{"address", format(a)}, {"internal_address", format(ia)}});
      };
    });
  }
  {
    auto* c = add("from-internal", "kneading sequence of an internal address");
    pos(c, "internal", a1, "internal address literal");
    c->callback([&] {
      action = [&] {
        const auto ia = parse_internal(a1);
        const auto k = kneading_from_internal(ia);
        emit(format(k), {{"internal_address", format(ia)}, {"kneading", format(k)}});
      };
    });
  }
  {
    auto* c = add("angled", "angled internal address of a component");
    pos(c, "address", a1, "intermediate address literal");
    c->callback([&] {
      action = [&] {
        const auto s = parse_intermediate(a1);
        const auto an = angled_internal(s);
        emit(format(an), {{"address", format(s)}, {"angled_internal_address", format(an)}});
      };
    });
  }
  {
    auto* c = add("from-angled", "component address of an angled internal address");
    pos(c, "angled", a1, "angled internal address literal");
    c->callback([&] {
      action = [&] {
        const auto an = parse_angled(a1);
        const auto s = addr_from_angled(an);
        emit(format(s), {{"angled_internal_address", format(an)}, {"address", format(s)}});
      };
    });
  }
  {
    auto* c = add("char", "characteristic addresses of a component");
    pos(c, "address", a1, "intermediate address literal");
    c->callback([&] {
      action = [&] {
        const auto w = hyp(a1);
        const auto& p = characteristic_addresses(w);
        emit("lower=" + format(p.lower) + " upper=" + format(p.upper),
             {{"address", format(w.addr())}, {"lower", format(p.lower)}, {"upper", format(p.upper)}});
      };
    });
  }
  {
    auto* c = add("forbidden", "forbidden kneading sequence of a component");
    pos(c, "address", a1, "intermediate address literal");
    c->callback([&] {
      action = [&] {
        const auto w = hyp(a1);
        const auto k = forbidden_kneading(w);
        emit(format(k), {{"address", format(w.addr())},
                         {"forbidden_kneading", format(k)},
                         {"forbidden_entry", w.forbidden_entry()}});
      };
    });
  }
  {
    auto* c = add("sector-boundary", "sector boundary with the given n-th entry");
    pos(c, "address", a1, "intermediate address literal");
    pos(c, "entry", a2, "integer");
    c->callback([&] {
      action = [&] {
        const auto w = hyp(a1);
        const Entry e = to_entry(a2);
        if (!e.is_integer()) throw DomainError("sector boundaries are selected by an integer");
        const auto r = sector_boundary(w, e.as_integer());
        emit(format(r), {{"address", format(w.addr())}, {"entry", e.as_integer()}, {"boundary", format(r)}});
      };
    });
  }
  {
    auto* c = add("sector", "all labelings of a sector");
    pos(c, "address", a1, "intermediate address literal");
    sel.add(c);
    c->callback([&] {
      action = [&] {
        const auto w = hyp(a1);
        const Json j = sector_json(sector_info(w, sel.key()), w);
        emit(kv_lines(j), j);
      };
    });
  }
  {
    auto* c = add("bifurcate", "child component at a sector label and angle");
    pos(c, "address", a1, "intermediate address literal");
    c->add_option("label", a2, "sector label");
    c->add_option("angle", a3, "reduced p/q in (0,1)");
    c->add_option("--height", height, "internal height instead of label and angle");
    c->callback([&] {
      action = [&] {
        const auto w = hyp(a1);
        IntermediateAddress v = IntermediateAddress::terminator();
        if (height) {
          if (!a2.empty()) throw ParseError("give either --height or label and angle", 0);
          v = bifurcate_at_height(w, to_height(*height));
        } else {
          if (a2.empty() || a3.empty()) throw ParseError("bifurcate needs a label and an angle", 0);
          v = bifurcate(w, to_entry(a2), to_angle(a3));
        }
        emit(format(v), {{"parent", format(w.addr())}, {"address", format(v)}});
      };
    });
  }
  {
    auto* c = add("classify", "primitive or satellite");
    pos(c, "address", a1, "intermediate address literal");
    c->callback([&] {
      action = [&] {
        const auto s = parse_intermediate(a1);
        const auto text = classification_text(s);
        Json j{{"address", format(s)}};
        j["classification"] = classification_json(s);
        emit(text, j);
      };
    });
  }
  {
    auto* c = add("parent", "parent of a satellite component");
    pos(c, "address", a1, "intermediate address literal");
    c->callback([&] {
      action = [&] {
        const auto s = parse_intermediate(a1);
        const Classification cl = classify(s);
        const auto* sat = std::get_if<Satellite>(&cl);
        if (!sat) throw DomainError("a primitive component has no parent");
        emit(format(sat->parent),
             {{"address", format(s)}, {"parent", format(sat->parent)}, {"rotation", rat(sat->rotation)}});
      };
    });
  }
  {
    auto* c = add("wake-contains", "whether an address lies in the wake of a component");
    pos(c, "component", a1, "intermediate address literal");
    pos(c, "address", a2, "address literal");
    c->callback([&] {
      action = [&] {
        const bool r = wake_contains(hyp(a1), parse_address(a2));
        emit(r ? "true" : "false", {{"contains", r}});
      };
    });
  }
  {
    auto* c = add("tune", "image of an address under the tuning map of a component");
    pos(c, "base", a1, "intermediate address literal");
    pos(c, "address", a2, "address literal");
    c->add_option("--variant", variant, "upper or lower")->check(CLI::IsMember({"upper", "lower"}));
    c->callback([&] {
      action = [&] {
        const Address r = parse_address(a2);
        const Address x = tune(hyp(a1), r, variant == "lower" ? TuningVariant::Lower : TuningVariant::Upper);
        emit(format(x), {{"base", a1}, {"address", format(r)}, {"variant", variant}, {"image", format(x)}});
      };
    });
  }
  {
    auto* c = add("tuning-block", "tuning block of a component");
    pos(c, "base", a1, "intermediate address literal");
    pos(c, "index", a2, "integer");
    c->callback([&] {
      action = [&] {
        const auto b = tuning_block(TuningBlockTable(hyp(a1)), to_int(a2));
        emit(expcomb::detail::join(b), {{"block", b}});
      };
    });
  }
  {
    auto* c = add("arc", "lowest-period component on the arc from a sector to a target");
    pos(c, "component", a1, "intermediate address literal");
    pos(c, "target", a2, "address literal");
    sel.add(c);
    c->add_flag("--target-component", target_component, "treat the target as a component");
    c->callback([&] {
      action = [&] {
        const auto w = hyp(a1);
        const SectorRef a = sector_info(w, sel.key());
        std::optional<ArcQueryResult> res;
        if (target_component)
          res = lowest_period_on_arc(a, hyp(a2));
        else
          res = lowest_period_on_arc(a, parse_address(a2));
        if (!res) {
          emit("none", {{"period", nullptr}});
          return;
        }
        Json j{{"period", res->period}, {"component", format(res->component)}};
        j["sector_kneading_entry"] =
            res->sector_kneading_entry ? Json(*res->sector_kneading_entry) : Json(nullptr);
        emit(kv_lines(j), j);
      };
    });
  }
  {
    auto* c = add("orbits", "number of essential periodic orbits");
    pos(c, "address", a1, "intermediate address literal");
    c->callback([&] {
      action = [&] {
        const auto n = essential_orbit_count(hyp(a1));
        if (const auto* f = std::get_if<FiniteCount>(&n))
          emit("finite " + std::to_string(f->count), {{"finite", true}, {"count", f->count}});
        else
          emit("infinite", {{"finite", false}, {"count", nullptr}});
      };
    });
  }
  {
    auto* c = add("describe", "full record of a component");
    pos(c, "address", a1, "intermediate address literal");
    c->callback([&] {
      action = [&] {
        const Json j = describe(hyp(a1));
        Json flat = j;
        if (!j["characteristic"].is_null())
          flat["characteristic"] = "lower=" + j["characteristic"]["lower"].get<std::string>() +
                                   " upper=" + j["characteristic"]["upper"].get<std::string>();
        if (!j["classification"].is_null())
          flat["classification"] = classification_text(parse_intermediate(a1));
        emit(kv_lines(flat), j);
      };
    });
  }
  {
    auto* c = add("enumerate", "enumerate intermediate or periodic addresses");
    pos(c, "kind", a1, "intermediate or periodic");
    c->add_option("--max", max, "maximal length or period")->check(CLI::PositiveNumber);
    c->add_option("--bound", bound, "entry bound")->check(CLI::NonNegativeNumber);
    c->callback([&] {
      action = [&] {
        std::vector<std::string> xs;
        if (a1 == "intermediate")
          for (const auto& s : enumerate_intermediate({max, bound})) xs.push_back(format(s));
        else if (a1 == "periodic")
          for (const auto& r : enumerate_periodic({max, bound})) xs.push_back(format(r));
        else
          throw ParseError("kind must be intermediate or periodic", 0);
        std::string text;
        for (const auto& x : xs) text += x + "\n";
        emit(text, Json(xs));
      };
    });
  }
  {
    auto* c = add("tree", "bifurcation tree of the enumerated components");
    c->add_option("--max", max, "maximal period")->check(CLI::PositiveNumber);
    c->add_option("--bound", bound, "entry bound")->check(CLI::NonNegativeNumber);
    c->add_option("--format", format_opt, "dot or json")->check(CLI::IsMember({"dot", "json"}));
    c->callback([&] {
      action = [&] {
        std::vector<HyperbolicComponent> nodes;
        std::map<std::string, std::size_t> index;
        for (const auto& s : enumerate_intermediate({max, bound})) {
          index[format(s)] = nodes.size();
          nodes.emplace_back(s);
        }
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        std::vector<Rational> rot;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          if (nodes[i].period() < 2) continue;
          const Classification cl = classify(nodes[i].addr());
          if (const auto* sat = std::get_if<Satellite>(&cl)) {
            edges.emplace_back(index.at(format(sat->parent)), i);
            rot.push_back(sat->rotation);
          }
        }
        if (format_opt == "dot" && !opt.json) {
          out << tree_dot(nodes, edges, rot) << "\n";
          return;
        }
        Json j;
        j["nodes"] = Json::array();
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          Json n{{"address", format(nodes[i].addr())},
                 {"period", nodes[i].period()},
                 {"internal_address", format(nodes[i].internal_address())}};
          n["children"] = Json::array();
          for (const auto& [p, ch] : edges)
            if (p == i) n["children"].push_back(format(nodes[ch].addr()));
          j["nodes"].push_back(n);
        }
        j["edges"] = Json::array();
        for (std::size_t e = 0; e < edges.size(); ++e)
          j["edges"].push_back({{"parent", format(nodes[edges[e].first].addr())},
                                {"child", format(nodes[edges[e].second].addr())},
                                {"rotation", rat(rot[e])}});
        out << j.dump(2) << "\n";
      };
    });
  }
  int check_status = 0;
  {
    auto* c = add("check", "run an exhaustive property suite");
    c->add_option("suite", a1, "suite name or 'all'");
    c->add_option("--max", max, "maximal length or period")->check(CLI::PositiveNumber);
    c->add_option("--bound", bound, "entry bound")->check(CLI::NonNegativeNumber);
    c->add_flag("--list", list, "list suite names");
    c->callback([&] {
      action = [&] {
        if (list) {
          const auto names = suite_names();
          std::string text;
          for (const auto& n : names) text += n + "\n";
          emit(text, Json(names));
          return;
        }
        if (a1.empty()) throw ParseError("check needs a suite name", 0);
        std::vector<std::string> names = a1 == "all" ? suite_names() : std::vector<std::string>{a1};
        Json reports = Json::array();
        std::string text;
        for (const auto& n : names) {
          const auto r = exhaustive_check(n, {max, bound});
          if (!r.passed()) check_status = 1;
          Json j{{"suite", r.suite}, {"max", max}, {"bound", bound}, {"cases", r.cases}};
          j["counterexamples"] = Json::array();
          for (const auto& ce : r.counterexamples)
            j["counterexamples"].push_back({{"witness", ce.witness}, {"detail", ce.detail}});
          reports.push_back(j);
          text += r.suite + ": " + std::to_string(r.cases) + " cases, " +
                  std::to_string(r.counterexamples.size()) + " counterexamples\n";
          if (!opt.quiet)
            for (const auto& ce : r.counterexamples) text += "  " + ce.witness + ": " + ce.detail + "\n";
        }
        emit(text, names.size() == 1 ? reports[0] : reports);
      };
    });
  }

  std::vector<std::string> argv_store{"expcomb"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  auto diag = [&](const std::string& msg) {
    if (!opt.quiet) err << "error: " << msg << "\n";
  };
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    diag(e.what());
    return 2;
  }
  try {
    action();
  } catch (const ParseError& e) {
    diag(e.what());
    return 2;
  } catch (const std::exception& e) {
    diag(e.what());
    return 1;
  }
  return check_status;
}

}  // namespace expcomb::cli

#endif
