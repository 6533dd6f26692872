// finosc — batch verification front end for the finite oscillator toolkit.
//
// Exit codes: 0 all assertions passed; 1 assertion failures (with a
// machine-readable failure list); 2 flag/input validation errors; 3 a
// desk-scale size guard fired.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "finosc/generators.hpp"
#include "finosc/orbits.hpp"
#include "finosc/qcomb.hpp"
#include "finosc/star.hpp"
#include "finosc/suites.hpp"

using namespace finosc;
using nlohmann::json;

namespace {

json big_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return v.convert_to<std::int64_t>();
    std::ostringstream os;
    os << v;
    return os.str();
}

FieldPtr field_for_q(std::uint32_t q) {
    for (std::uint32_t p = 3; p <= q; p += 2) {
        if (!is_prime(p)) continue;
        std::uint64_t v = p;
        for (std::uint32_t e = 1; v <= q; ++e, v *= p)
            if (v == q) return FieldCtx::make(p, e);
    }
    throw std::invalid_argument("q must be an odd prime power");
}

// "a<=3,b=2" -> bounds map
struct GridSpec {
    std::map<std::string, std::pair<std::uint32_t, std::uint32_t>> ranges; // [lo, hi]
    std::uint32_t hi(const std::string& k, std::uint32_t def) const {
        auto it = ranges.find(k);
        return it == ranges.end() ? def : it->second.second;
    }
    std::uint32_t lo(const std::string& k, std::uint32_t def) const {
        auto it = ranges.find(k);
        return it == ranges.end() ? def : it->second.first;
    }
};

GridSpec parse_grid(const std::string& spec) {
    GridSpec g;
    if (spec.empty()) return g;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto le = item.find("<=");
        auto eq = item.find('=');
        if (le != std::string::npos) {
            std::string k = item.substr(0, le);
            std::uint32_t v = std::stoul(item.substr(le + 2));
            g.ranges[k] = {0, v};
        } else if (eq != std::string::npos) {
            std::string k = item.substr(0, eq);
            std::uint32_t v = std::stoul(item.substr(eq + 1));
            g.ranges[k] = {v, v};
        } else {
            throw CLI::ValidationError("grid", "expected 'name<=value' or 'name=value'");
        }
    }
    return g;
}

int emit_reports(const std::vector<SuiteReport>& reps, const std::string& format) {
    bool all_pass = true;
    std::size_t checks = 0, failures = 0;
    for (const auto& r : reps) {
        all_pass = all_pass && r.pass();
        checks += r.results.size();
        failures += r.failures();
    }
    if (format == "json") {
        json out;
        out["schema"] = 1;
        out["pass"] = all_pass;
        out["counts"] = {{"checks", checks}, {"failures", failures}};
        out["suites"] = json::array();
        json fail_list = json::array();
        for (const auto& r : reps) {
            json jr;
            jr["suite"] = r.suite;
            jr["pass"] = r.pass();
            jr["time_ms"] = r.total_ms;
            jr["results"] = json::array();
            for (const auto& c : r.results) {
                json jc = {{"name", c.name}, {"params", c.params}, {"pass", c.pass},
                           {"time_ms", c.ms}};
                if (!c.lhs.empty()) jc["lhs"] = c.lhs;
                if (!c.rhs.empty()) jc["rhs"] = c.rhs;
                jr["results"].push_back(jc);
                if (!c.pass)
                    fail_list.push_back({{"suite", r.suite}, {"name", c.name},
                                         {"params", c.params}});
            }
            out["suites"].push_back(jr);
        }
        out["failures"] = fail_list;
        std::cout << out.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "suite,name,params,pass,lhs,rhs,time_ms\n";
        for (const auto& r : reps)
            for (const auto& c : r.results)
                std::cout << r.suite << ",\"" << c.name << "\",\"" << c.params << "\","
                          << (c.pass ? "true" : "false") << ",\"" << c.lhs << "\",\"" << c.rhs
                          << "\"," << c.ms << "\n";
    } else {
        for (const auto& r : reps) {
            std::cout << "== suite " << r.suite << (r.pass() ? " [PASS]" : " [FAIL]") << " ("
                      << r.total_ms / 1000.0 << " s)\n";
            for (const auto& c : r.results) {
                std::cout << "   " << (c.pass ? "pass" : "FAIL") << "  " << c.name << "  ["
                          << c.params << "]";
                if (!c.lhs.empty()) std::cout << "  " << c.lhs;
                if (!c.rhs.empty()) std::cout << " (expected " << c.rhs << ")";
                std::cout << "\n";
            }
        }
        std::cout << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << " (" << checks
                  << " checks, " << failures << " failures)\n";
    }
    return all_pass ? 0 : 1;
}

std::optional<SymmetricForm> make_form(FieldPtr ctx, const std::string& spec,
                                       std::uint32_t n_hint) {
    if (spec.empty()) return std::nullopt;
    std::string s = spec;
    if (s.find(':') == std::string::npos && s[0] != '[' && s[0] != '{')
        s += ":" + std::to_string(n_hint);
    return SymmetricForm::parse_spec(std::move(ctx), s);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finosc — exact verification of the finite oscillator star-algebra"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({
        "json", "csv", "text"}));

    // verify
    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    std::string suite = "all";
    std::vector<std::uint32_t> qs;
    int jobs = 1;
    std::string config_path;
    verify->add_option("--suite", suite, "suite name")
        ->check(CLI::IsMember(suite_names()));
    verify->add_option("--q", qs, "restrict to these q values");
    verify->add_option("--jobs", jobs, "worker count for parameter points");
    verify->add_option("--config", config_path, "JSON config with named grids");
    std::string grid_name;
    verify->add_option("--grid", grid_name, "named grid from the config file");

    // orbits
    auto* orbits_cmd = app.add_subcommand("orbits", "orbit censuses");
    std::string side = "sp";
    std::uint32_t oq = 3, oN = 1, on = 1;
    std::string oform;
    bool oracle = false;
    orbits_cmd->add_option("--side", side)->check(CLI::IsMember({"sp", "o"}));
    orbits_cmd->add_option("--q", oq)->required();
    orbits_cmd->add_option("--N", oN);
    orbits_cmd->add_option("--n", on);
    orbits_cmd->add_option("--form", oform, "W form spec (O side)");
    orbits_cmd->add_flag("--oracle", oracle, "also run the Burnside oracle");

    // identity
    auto* identity_cmd = app.add_subcommand("identity", "combinatorial identities");
    std::string iname = "lemma32";
    std::string igrid;
    identity_cmd->add_option("--name", iname)
        ->check(CLI::IsMember({"lemma32", "tranche", "prop31", "cor32", "thm1"}));
    identity_cmd->add_option("--grid", igrid, "bounds like \"p<=3,r<=5\"");

    // gauss
    auto* gauss_cmd = app.add_subcommand("gauss", "K(c) against the closed form");
    std::uint32_t gq = 3, gn = 1;
    std::string gform = "odd";
    std::int64_t gc = 1;
    std::uint32_t gchar = 1;
    gauss_cmd->add_option("--q", gq)->required();
    gauss_cmd->add_option("--n", gn);
    gauss_cmd->add_option("--form", gform);
    gauss_cmd->add_option("--c", gc)->required();
    gauss_cmd->add_option("--char", gchar, "character parameter a");

    // act
    auto* act_cmd = app.add_subcommand("act", "apply a named element to a model basis vector");
    std::uint32_t aq = 3, aN = 1, an = 1, achar = 1;
    std::string aform, aelement, avector;
    act_cmd->add_option("--q", aq)->required();
    act_cmd->add_option("--N", aN);
    act_cmd->add_option("--n", an);
    act_cmd->add_option("--form", aform);
    act_cmd->add_option("--char", achar);
    act_cmd->add_option("--element", aelement, "f:<coords>|g:<t>|alpha:<t>|beta|gamma:<s>")
        ->required();
    act_cmd->add_option("--vector", avector, "model coords c1,c2,... or an integer code")
        ->required();

    // enddim
    auto* enddim_cmd = app.add_subcommand("enddim", "endomorphism-algebra dimension identity");
    std::string eside = "sp";
    std::uint32_t eq = 3, eN = 1, en = 1, eell = 0;
    std::string eform;
    enddim_cmd->add_option("--side", eside)->check(CLI::IsMember({"sp", "o"}));
    enddim_cmd->add_option("--q", eq)->required();
    enddim_cmd->add_option("--N", eN);
    enddim_cmd->add_option("--n", en);
    enddim_cmd->add_option("--form", eform);
    enddim_cmd->add_option("--ell", eell);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            SuiteOptions opts;
            opts.qs = qs;
            opts.jobs = jobs;
            if (!config_path.empty() && !grid_name.empty()) {
                std::ifstream in(config_path);
                if (!in) throw std::invalid_argument("cannot open config file");
                json cfg = json::parse(in);
                auto g = cfg.at("grids").at(grid_name);
                if (g.contains("q"))
                    for (auto& v : g["q"]) opts.qs.push_back(v.get<std::uint32_t>());
                if (g.contains("jobs")) opts.jobs = g["jobs"].get<int>();
            }
            return emit_reports(run_suite(suite, opts), format);
        }

        if (*orbits_cmd) {
            auto F = field_for_q(oq);
            OrbitSide oside = side == "sp" ? OrbitSide::Sp : OrbitSide::O;
            std::optional<SymmetricForm> W = make_form(F, oform, on);
            if (oside == OrbitSide::O && !W)
                W = SymmetricForm::parse_spec(F, (on % 2 ? "odd:" : "plus:") +
                                                     std::to_string(on));
            auto census = orbit_census(oside, F, oN, on, W, oracle);
            json out;
            out["schema"] = 1;
            out["descriptor_count"] = big_to_json(census.descriptor_count);
            if (census.closed_form) out["closed_form"] = big_to_json(*census.closed_form);
            if (census.burnside) out["burnside"] = big_to_json(*census.burnside);
            bool pass = (!census.closed_form || *census.closed_form == census.descriptor_count) &&
                        (!census.burnside || !census.closed_form ||
                         *census.burnside == *census.closed_form);
            out["pass"] = pass;
            if (format == "text") {
                std::cout << "descriptor_count " << census.descriptor_count;
                if (census.closed_form) std::cout << "  closed_form " << *census.closed_form;
                if (census.burnside) std::cout << "  burnside " << *census.burnside;
                std::cout << "  " << (pass ? "PASS" : "FAIL") << "\n";
            } else {
                std::cout << out.dump(2) << "\n";
            }
            return pass ? 0 : 1;
        }

        if (*identity_cmd) {
            GridSpec g = parse_grid(igrid);
            json rows = json::array();
            bool all = true;
            auto push_row = [&](json params, bool pass, const std::string& lhs,
                                const std::string& rhs) {
                rows.push_back({{"params", std::move(params)},
                                {"pass", pass},
                                {"lhs", lhs},
                                {"rhs", rhs}});
                all = all && pass;
            };
            if (iname == "lemma32") {
                for (std::uint32_t p = g.lo("p", 0); p <= g.hi("p", 3); ++p)
                    for (std::uint32_t r = std::max(1u, g.lo("r", 1)); r <= g.hi("r", 5); ++r)
                        for (std::uint32_t b = g.lo("b", 0);
                             b < r && b <= g.hi("b", r - 1); ++b) {
                            auto [lhs, rhs] = lemma_identity_sides(p, r, b);
                            std::ostringstream l, rr2;
                            l << lhs.eval(3);
                            rr2 << rhs.eval(3);
                            push_row({{"p", p}, {"r", r}, {"b", b}}, lhs == rhs,
                                     l.str() + " @q=3", rr2.str() + " @q=3");
                        }
            } else if (iname == "tranche") {
                for (std::uint32_t p = g.lo("p", 0); p <= g.hi("p", 3); ++p)
                    for (std::uint32_t r = g.lo("r", 0); r <= g.hi("r", 4); ++r)
                        for (std::uint32_t b = g.lo("b", 0); b <= r && b <= g.hi("b", r); ++b)
                            for (std::uint32_t k = b; k <= r && k <= g.hi("k", 5); ++k)
                                push_row({{"k", k}, {"p", p}, {"b", b}, {"r", r}},
                                         tranche_identity_check(k, p, b, r), "", "");
            } else {
                // prop31 / cor32 / thm1 over the stable grids
                for (std::uint32_t q : {3u, 5u}) {
                    if (g.ranges.count("q") && (q < g.lo("q", q) || q > g.hi("q", q))) continue;
                    struct WCase {
                        GroupKind kind;
                        std::uint32_t n;
                        const char* tag;
                    };
                    for (auto w : {WCase{GroupKind::OddO, 1, "odd:1"},
                                   WCase{GroupKind::PlusO, 2, "plus:2"},
                                   WCase{GroupKind::MinusO, 2, "minus:2"},
                                   WCase{GroupKind::OddO, 3, "odd:3"},
                                   WCase{GroupKind::Sp, 2, "sp:2N=2"}}) {
                        std::uint32_t h = witt_index_of_kind(w.kind, w.n);
                        std::uint32_t ell_hi = (iname == "cor32" || iname == "thm1") ? 0 : h;
                        for (std::uint32_t ell = 0; ell <= ell_hi; ++ell) {
                            auto r = hom_dimension_identity(w.kind, w.n, ell, q);
                            std::ostringstream l, rr2;
                            l << r.lhs_at_q;
                            rr2 << r.rhs_at_q;
                            push_row({{"q", q}, {"space", w.tag}, {"ell", ell}}, r.pass,
                                     l.str(), rr2.str());
                        }
                    }
                }
            }
            json out = {{"schema", 1}, {"identity", iname}, {"pass", all}, {"rows", rows}};
            if (format == "text") {
                for (auto& row : rows)
                    std::cout << row["params"].dump() << "  "
                              << (row["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
                std::cout << (all ? "ALL PASS" : "FAILURES PRESENT") << "\n";
            } else {
                std::cout << out.dump(2) << "\n";
            }
            return all ? 0 : 1;
        }

        if (*gauss_cmd) {
            auto F = field_for_q(gq);
            auto W = make_form(F, gform, gn);
            if (!W) W = SymmetricForm::standard(F, FormType::Odd, gn);
            Fq c = gc >= 0 && gc < static_cast<std::int64_t>(gq) ? static_cast<Fq>(gc)
                                                                 : F->from_int(gc);
            auto K = k_constant(*F, *W, c, gchar);
            auto closed = k_constant_closed(*F, *W, c, gchar);
            bool pass = K.value == closed;
            json out = {{"schema", 1},
                        {"q", gq},
                        {"n", W->n()},
                        {"c", c},
                        {"K", K.value.to_string()},
                        {"closed_form", closed.to_string()},
                        {"pass", pass}};
            if (format == "text")
                std::cout << "K(" << c << ") = " << K.value.to_string() << "\n"
                          << "closed    = " << closed.to_string() << "\n"
                          << (pass ? "PASS" : "FAIL") << "\n";
            else
                std::cout << out.dump(2) << "\n";
            return pass ? 0 : 1;
        }

        if (*act_cmd) {
            auto F = field_for_q(aq);
            auto Wopt = make_form(F, aform, an);
            SymmetricForm W = Wopt ? *Wopt
                                   : (an == 1 ? SymmetricForm::make(F, {1}, 1)
                                              : SymmetricForm::standard(
                                                    F, an % 2 ? FormType::Odd : FormType::Plus,
                                                    an));
            auto T = TensorSpace::make(F, aN, W);
            // element spec
            auto colon = aelement.find(':');
            std::string kind = aelement.substr(0, colon);
            std::string arg = colon == std::string::npos ? "" : aelement.substr(colon + 1);
            StarElement elt = StarElement::zero(T, achar);
            if (kind == "f") {
                std::vector<Fq> coords;
                std::stringstream ss(arg);
                std::string item;
                while (std::getline(ss, item, ',')) coords.push_back(std::stoul(item));
                if (coords.size() != T->n())
                    throw std::invalid_argument("lambda needs n coordinates");
                std::uint64_t lam = 0;
                for (std::size_t i = coords.size(); i-- > 0;) lam = lam * aq + coords[i];
                elt = f_lambda(T, lam, achar);
            } else if (kind == "g") {
                elt = g_t(T, static_cast<Fq>(std::stoul(arg)), achar);
            } else if (kind == "alpha") {
                elt = alpha_t(T, static_cast<Fq>(std::stoul(arg)), achar);
            } else if (kind == "beta") {
                elt = beta_element(T, achar);
            } else if (kind == "gamma") {
                elt = gamma_s(T, static_cast<Fq>(std::stoul(arg)), achar);
            } else {
                throw std::invalid_argument("unknown element spec '" + aelement + "'");
            }
            std::uint64_t xcode = 0;
            if (avector.find(',') == std::string::npos) {
                xcode = std::stoull(avector);
            } else {
                std::vector<Fq> coords;
                std::stringstream ss(avector);
                std::string item;
                while (std::getline(ss, item, ',')) coords.push_back(std::stoul(item));
                if (coords.size() != static_cast<std::size_t>(T->model_rank()))
                    throw std::invalid_argument("vector needs N*n coordinates");
                for (std::size_t i = coords.size(); i-- > 0;) xcode = xcode * aq + coords[i];
            }
            auto image = elt.apply(xcode);
            json out;
            out["schema"] = 1;
            out["element"] = aelement;
            out["vector"] = xcode;
            out["image"] = json::array();
            for (auto& [code, coeff] : image) {
                std::vector<Fq> coords(T->model_rank());
                std::uint64_t cc = code;
                for (std::uint32_t i = 0; i < T->model_rank(); ++i) {
                    coords[i] = static_cast<Fq>(cc % aq);
                    cc /= aq;
                }
                out["image"].push_back({{"vec", coords}, {"coeff", coeff.to_string()}});
            }
            if (format == "text") {
                for (auto& term : out["image"])
                    std::cout << term["vec"].dump() << " : "
                              << term["coeff"].get<std::string>() << "\n";
            } else {
                std::cout << out.dump(2) << "\n";
            }
            return 0;
        }

        if (*enddim_cmd) {
            GroupKind kind;
            std::uint32_t dim_n;
            if (eside == "o") {
                // End over O(W,B): identity in terms of Sp(V) parabolic data
                if (2 * eN == 0) throw std::invalid_argument("N must be positive");
                kind = GroupKind::Sp;
                dim_n = 2 * eN;
            } else {
                auto F = field_for_q(eq);
                auto W = make_form(F, eform, en);
                if (!W)
                    W = SymmetricForm::standard(F, en % 2 ? FormType::Odd : FormType::Plus, en);
                switch (W->type()) {
                    case FormType::Odd: kind = GroupKind::OddO; break;
                    case FormType::Plus: kind = GroupKind::PlusO; break;
                    case FormType::Minus: kind = GroupKind::MinusO; break;
                    default: throw std::logic_error("unreachable");
                }
                dim_n = W->n();
            }
            auto r = hom_dimension_identity(kind, dim_n, eell, eq);
            json out = {{"schema", 1},
                        {"side", eside},
                        {"ell", eell},
                        {"lhs", big_to_json(r.lhs_at_q)},
                        {"rhs", big_to_json(r.rhs_at_q)},
                        {"lhs_poly", r.lhs.to_string()},
                        {"rhs_poly", r.rhs.to_string()},
                        {"pass", r.pass}};
            if (format == "text")
                std::cout << "lhs " << r.lhs_at_q << "  rhs " << r.rhs_at_q << "  "
                          << (r.pass ? "PASS" : "FAIL") << "\n";
            else
                std::cout << out.dump(2) << "\n";
            return r.pass ? 0 : 1;
        }
    } catch (const SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
