// jackmap: exact computation and verification of the alpha-deformed hypermap
// structure coefficients of Jack characters.

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "jackmap/oracle.hpp"
#include "jackmap/structure.hpp"
#include "jackmap/textio.hpp"

using namespace jackmap;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "jackmap 0.1.0";

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        os = &file;
    }
    std::ostream& operator*() { return *os; }
};

Rat parse_rational(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

std::string scalar_str(const ScalarQb& x, const std::string& alpha) {
    if (alpha.empty()) return x.to_string();
    return x.eval_at_alpha(parse_rational(alpha)).get_str();
}

std::string pexpr_str(const PExpr& f, const std::string& alpha) {
    if (alpha.empty()) return f.to_string();
    if (f.is_zero()) return "0";
    std::string s;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        if (!s.empty()) s += " + ";
        s += it->second.eval_at_alpha(parse_rational(alpha)).get_str() + "*p" +
             it->first.to_string();
    }
    return s;
}

nlohmann::ordered_json entry_json(const TableEntry& e) {
    nlohmann::ordered_json j;
    j["pi"] = partition_to_json(e.pi);
    j["mu"] = partition_to_json(e.mu);
    j["nu"] = partition_to_json(e.nu);
    j["g"] = scalar_to_json(e.g);
    return j;
}

int report_exit(const Report& r, const std::string& what, std::ostream& os) {
    if (r.pass) {
        os << "PASS " << what << " (" << r.checked << " checks)\n";
        return 0;
    }
    os << "FAIL " << what << ": " << r.first_mismatch << "\n";
    return 1;
}

void write_shards(const std::vector<TableEntry>& table, int max_total,
                  const std::string& route, const std::string& dir) {
    fs::create_directories(dir);
    fs::path manifest_path = fs::path(dir) / "manifest.json";
    nlohmann::ordered_json manifest;
    if (fs::exists(manifest_path)) {
        std::ifstream in(manifest_path);
        in >> manifest;
    } else {
        manifest["version"] = kVersion;
        manifest["shards"] = nlohmann::ordered_json::object();
    }
    std::map<int, std::vector<const TableEntry*>> by_total;
    for (auto& e : table) by_total[e.mu.size() + e.nu.size()].push_back(&e);
    for (int s = 0; s <= max_total; ++s) {
        fs::path shard = fs::path(dir) / ("g_total_" + std::to_string(s) + ".jsonl");
        if (fs::exists(shard)) continue;  // append-only: existing totals stay
        std::ofstream out(shard);
        for (const TableEntry* e : by_total[s]) out << entry_json(*e).dump() << "\n";
        manifest["shards"]["g_total_" + std::to_string(s)] = {{"total_size", s},
                                                              {"entries", by_total[s].size()},
                                                              {"route", route},
                                                              {"version", kVersion}};
    }
    std::ofstream out(manifest_path);
    out << manifest.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Jack-character structure coefficients and hypermap series"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string alpha, out_path, shards, route = "c";
    int jobs = 1, degree_cap = 12;
    bool pretty = false;
    app.add_option("--alpha", alpha, "evaluate coefficients at a rational alpha");
    app.add_option("--out", out_path, "write output to a file instead of stdout");
    app.add_flag("--pretty", pretty, "human-readable table output");
    app.add_option("--degree-cap", degree_cap,
                   "largest Jack degree the cache may build (default 12)");

    // jack <partition>
    std::string arg_part, arg_mu, arg_nu, arg_lambda, arg_pexpr;
    auto* cmd_jack = app.add_subcommand("jack", "print J_lambda in the power-sum basis");
    cmd_jack->add_option("partition", arg_part, "index partition, e.g. [2,1]")->required();

    // char <mu> <lambda>
    auto* cmd_char = app.add_subcommand("char", "print the Jack character theta_mu(lambda)");
    cmd_char->add_option("mu", arg_mu)->required();
    cmd_char->add_option("lambda", arg_lambda)->required();

    // cgrid <n>
    int arg_n = 0, arg_max = 4, arg_l = 1, arg_tmax = 4, arg_k = 2;
    auto* cmd_cgrid = app.add_subcommand("cgrid", "all c^pi_{mu,nu} of a given size, JSON lines");
    cmd_cgrid->add_option("n", arg_n, "common size of the three partitions")->required();

    // ggrid --max N --route c|rec|both
    auto* cmd_ggrid = app.add_subcommand("ggrid", "g table through |mu|+|nu| <= max, JSON lines");
    cmd_ggrid->add_option("--max", arg_max, "cap on |mu|+|nu|")->required();
    cmd_ggrid->add_option("--route", route, "c, rec, or both")
        ->check(CLI::IsMember({"c", "rec", "both"}));
    cmd_ggrid->add_option("--jobs", jobs, "parallel workers for the table fill");
    cmd_ggrid->add_option("--shards", shards,
                          "shard directory (JSON-lines per total size, append-only); "
                          "defaults to $JACKMAP_SHARDS when set");

    // op bn / op cl
    auto* cmd_op = app.add_subcommand("op", "apply a catalytic operator to a p-expression");
    auto* op_bn = cmd_op->add_subcommand("bn", "B_n, graded by u");
    op_bn->add_option("--n", arg_n, "operator index")->required();
    op_bn->add_option("--on", arg_pexpr, "p-expression, e.g. \"p[2,1] + 1/2*p[1]\"")->required();
    auto* op_cl = cmd_op->add_subcommand("cl", "C_l(t, .), graded by t");
    op_cl->add_option("--l", arg_l, "u-layer index")->required();
    op_cl->add_option("--tmax", arg_tmax, "truncation degree in t")->required();
    op_cl->add_option("--on", arg_pexpr, "p-expression")->required();

    // verify ...
    auto* cmd_verify = app.add_subcommand("verify", "run an identity verifier");
    auto* v_main = cmd_verify->add_subcommand("main", "the main differential equation");
    v_main->add_option("--l", arg_l, "largest u-layer")->required();
    v_main->add_option("--max", arg_max, "cap on |mu|+|nu|")->required();
    auto* v_comm = cmd_verify->add_subcommand("commutators", "[C_l, C_m] relations");
    v_comm->add_option("--max", arg_max, "basis degree cap")->required();
    int arg_lmax = 3, arg_ell = -1;
    v_comm->add_option("--lmax", arg_lmax, "largest operator index (default 3)");
    v_comm->add_option("--tmax", arg_tmax, "t-degree cap (default 6)")->default_val(6);
    auto* v_closed = cmd_verify->add_subcommand("closed-forms", "C_{l,k} closed forms vs engine");
    v_closed->add_option("--lmax", arg_lmax, "largest l (default 4)")->default_val(4);
    v_closed->add_option("--max", arg_max, "basis degree cap (default 4)")->default_val(4);
    auto* v_low = cmd_verify->add_subcommand("low-terms", "G_0, G_1, G_2 closed forms");
    v_low->add_option("--max", arg_max, "cap on |pi| (default 4)")->default_val(4);
    auto* v_iso = cmd_verify->add_subcommand("iso", "A_mu multiplication identity");
    v_iso->add_option("--max", arg_max, "cap on |mu|+|nu|")->required();
    auto* v_conn = cmd_verify->add_subcommand("connected", "connected-series identities");
    v_conn->add_option("--max", arg_max, "total size cap")->required();
    auto* v_const = cmd_verify->add_subcommand("constellations", "k-alphabet equation");
    v_const->add_option("--k", arg_k, "number of extra alphabets")->required();
    v_const->add_option("--max", arg_max, "total size cap")->required();
    v_const->add_option("--l", arg_ell, "largest u-layer (default 2)");

    // scan conjecture --max N
    auto* cmd_scan = app.add_subcommand("scan", "scan tables for conjectural properties");
    auto* scan_conj = cmd_scan->add_subcommand("conjecture", "integrality and positivity in b");
    scan_conj->add_option("--max", arg_max, "cap on |mu|+|nu|")->required();

    // oracle compare --max N
    auto* cmd_oracle = app.add_subcommand("oracle", "permutation-factorization ground truth");
    auto* oracle_cmp = cmd_oracle->add_subcommand("compare", "marked counts vs g at alpha = 1");
    oracle_cmp->add_option("--max", arg_max, "cap on |pi|")->required();

    // constellations / connected tables
    auto* cmd_const = app.add_subcommand("constellations", "multi-alphabet g table");
    cmd_const->add_option("--k", arg_k, "number of extra alphabets")->required();
    cmd_const->add_option("--max", arg_max, "total size cap")->required();
    auto* cmd_conn = app.add_subcommand("connected", "connected ghat table, JSON lines");
    cmd_conn->add_option("--max", arg_max, "total size cap")->required();

    // allow the global flags (--alpha, --out, --pretty) after a subcommand
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        for (CLI::App* sub : a->get_subcommands({})) {
            sub->fallthrough();
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Output out;
    try {
        out.open(out_path);
        StructureContext ctx(degree_cap);

        if (*cmd_jack) {
            Partition la = parse_partition(arg_part);
            *out << pexpr_str(ctx.jack().poly(la), alpha) << "\n";
            return 0;
        }
        if (*cmd_char) {
            Partition mu = parse_partition(arg_mu), la = parse_partition(arg_lambda);
            *out << scalar_str(jack_character(ctx.jack(), mu, la), alpha) << "\n";
            return 0;
        }
        if (*cmd_cgrid) {
            for (auto& [key, coeff] : ctx.tau().layer(arg_n)) {
                ScalarQb c = ctx.tau().c_coefficient(key[0], key[1], key[2]);
                if (pretty) {
                    *out << "c^" << key[0].to_string() << "_" << key[1].to_string() << ","
                         << key[2].to_string() << " = " << scalar_str(c, alpha) << "\n";
                } else {
                    nlohmann::ordered_json j;
                    j["pi"] = partition_to_json(key[0]);
                    j["mu"] = partition_to_json(key[1]);
                    j["nu"] = partition_to_json(key[2]);
                    j["c"] = scalar_to_json(c);
                    if (!alpha.empty()) j["value_at_alpha"] = scalar_str(c, alpha);
                    *out << j.dump() << "\n";
                }
            }
            return 0;
        }
        if (*cmd_ggrid) {
            if (shards.empty())
                if (const char* env = std::getenv("JACKMAP_SHARDS")) shards = env;
            if (!shards.empty() && route == "c" && fs::is_directory(shards)) {
                // resume: seed the memo from already-persisted shards
                for (auto& dirent : fs::directory_iterator(shards)) {
                    if (dirent.path().extension() != ".jsonl") continue;
                    std::ifstream in(dirent.path());
                    std::string line;
                    while (std::getline(in, line)) {
                        if (line.empty()) continue;
                        nlohmann::json j = nlohmann::json::parse(line);
                        ctx.seed_g(partition_from_json(j.at("pi")),
                                   partition_from_json(j.at("mu")),
                                   partition_from_json(j.at("nu")),
                                   scalar_from_json(j.at("g")));
                    }
                }
            }
            auto table = ctx.build_table(arg_max, route, jobs);
            for (auto& e : table) {
                if (pretty) {
                    *out << "g^" << e.pi.to_string() << "_" << e.mu.to_string() << ","
                         << e.nu.to_string() << " = " << scalar_str(e.g, alpha) << "\n";
                } else {
                    nlohmann::ordered_json j = entry_json(e);
                    if (!alpha.empty()) j["value_at_alpha"] = scalar_str(e.g, alpha);
                    *out << j.dump() << "\n";
                }
            }
            if (!shards.empty()) write_shards(table, arg_max, route, shards);
            return 0;
        }
        if (*op_bn) {
            PExpr f = parse_pexpr(arg_pexpr);
            for (auto& [u, g] : ctx.ops().b_n_apply(arg_n, f))
                *out << "u^" << u << ": " << pexpr_str(g, alpha) << "\n";
            return 0;
        }
        if (*op_cl) {
            PExpr f = parse_pexpr(arg_pexpr);
            for (auto& [n, g] : ctx.ops().c_ell_apply(arg_l, f, arg_tmax))
                *out << "t^" << n << ": " << pexpr_str(g, alpha) << "\n";
            return 0;
        }
        if (*v_main) {
            int rc = 0;
            for (int l = 0; l <= arg_l; ++l)
                rc |= report_exit(ctx.verify_main_equation(l, arg_max),
                                  "main equation, u-layer " + std::to_string(l), *out);
            return rc;
        }
        if (*v_comm) {
            int rc = 0;
            for (int l = 0; l <= arg_lmax; ++l)
                for (int m = 1; m <= arg_lmax; ++m)
                    rc |= report_exit(
                        commutator_check(ctx.ops(), l, m, arg_max, arg_tmax),
                        "[C_" + std::to_string(l) + ", C_" + std::to_string(m) + "]", *out);
            return rc;
        }
        if (*v_closed) {
            int rc = 0;
            for (int l = 1; l <= arg_lmax; ++l)
                for (int k = 0; k <= 2; ++k) {
                    Report r;
                    for (auto& la : partitions_up_to(arg_max)) {
                        ++r.checked;
                        if (!(ctx.ops().c_ell_k_engine(l, k, PExpr::p(la)) ==
                              c_ell_k_closed(l, k, PExpr::p(la))))
                            r.fail("on p" + la.to_string());
                    }
                    rc |= report_exit(r, "C_{" + std::to_string(l) + "," + std::to_string(k) + "}",
                                      *out);
                }
            return rc;
        }
        if (*v_low) return report_exit(ctx.verify_low_terms(arg_max), "G_0, G_1, G_2", *out);
        if (*v_iso) {
            int rc = 0;
            for (int a = 0; a <= arg_max; ++a)
                for (auto& mu : partitions_of(a))
                    for (int b = 0; a + b <= arg_max; ++b)
                        for (auto& nu : partitions_of(b))
                            rc |= report_exit(ctx.verify_iso(mu, nu),
                                              "A_" + mu.to_string() + " A_" + nu.to_string(),
                                              *out);
            return rc;
        }
        if (*v_conn) {
            int rc = 0;
            rc |= report_exit(ctx.verify_connected_relation(arg_max), "connected relation", *out);
            rc |= report_exit(ctx.verify_connected_degree_bound(arg_max),
                              "connected degree bound", *out);
            int eq_cap = std::min(arg_max, 3);
            rc |= report_exit(ctx.verify_connected_equation(eq_cap, eq_cap),
                              "connected equation at total size " + std::to_string(eq_cap), *out);
            return rc;
        }
        if (*v_const) {
            int lmax = arg_ell < 0 ? 2 : arg_ell;
            return report_exit(ctx.verify_constellation_equation(arg_k, arg_max, lmax),
                               "constellation equation, k = " + std::to_string(arg_k), *out);
        }
        if (*scan_conj) {
            ScanResult res = ctx.conjecture_scan(arg_max);
            *out << "entries: " << res.entries << "\n";
            for (auto& v : res.violations) *out << v << "\n";
            *out << (res.violations.empty() ? "no conjecture violations" : "violations found")
                 << "\n";
            return 0;
        }
        if (*oracle_cmp) {
            bool all_ok = true;
            for (int n = 0; n <= arg_max; ++n)
                for (auto& pi : partitions_of(n))
                    for (int a = 0; a <= n; ++a)
                        for (auto& mu : partitions_of(a))
                            for (int b = 0; b <= n; ++b)
                                for (auto& nu : partitions_of(b)) {
                                    mpz_class oracle = marked_hypermap_count(pi, mu, nu);
                                    Rat g1 = ctx.g(pi, mu, nu).eval_at_alpha(1);
                                    bool ok = Rat(oracle) == g1;
                                    all_ok = all_ok && ok;
                                    *out << pi.to_string() << " " << mu.to_string() << " "
                                         << nu.to_string() << " oracle=" << oracle
                                         << " g(1)=" << g1 << (ok ? " match" : " MISMATCH")
                                         << "\n";
                                }
            *out << (all_ok ? "PASS oracle comparison" : "FAIL oracle comparison") << "\n";
            return all_ok ? 0 : 1;
        }
        if (*cmd_const) {
            MultiSeries s = ctx.constellation_series(arg_k, arg_max);
            for (auto& [key, c] : s.terms()) {
                nlohmann::ordered_json j;
                j["t"] = key.t;
                j["pi"] = partition_to_json(key.ps[0]);
                nlohmann::ordered_json mus = nlohmann::ordered_json::array();
                for (size_t i = 1; i < key.ps.size(); ++i)
                    mus.emplace_back(nlohmann::ordered_json(partition_to_json(key.ps[i])));
                j["mus"] = mus;
                j["coeff"] = scalar_to_json(c);
                *out << j.dump() << "\n";
            }
            return 0;
        }
        if (*cmd_conn) {
            MultiSeries gh = ctx.g_hat(arg_max);
            for (auto& [key, c] : gh.terms()) {
                nlohmann::ordered_json j;
                j["pi"] = partition_to_json(key.ps[0]);
                j["mu"] = partition_to_json(key.ps[1]);
                j["nu"] = partition_to_json(key.ps[2]);
                j["ghat"] = scalar_to_json(c * ScalarQb(key.ps[0].size()));
                *out << j.dump() << "\n";
            }
            return 0;
        }
        *out << "no subcommand action matched\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
