#include "rbk/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "rbk/census.hpp"
#include "rbk/errors.hpp"

namespace rbk::cli {

using nlohmann::ordered_json;

namespace {

std::string join_indices(const std::vector<std::size_t>& v, const char* sep = ", ") {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        out += (k ? sep : "") + std::to_string(v[k]);
    }
    return out;
}

std::vector<std::string> matrix_rows(const PMatrix& e) {
    std::vector<std::string> rows;
    std::istringstream in(e.to_string());
    for (std::string line; std::getline(in, line);) {
        rows.push_back(line);
    }
    return rows;
}

std::string yes_no(const ordered_json& v) {
    if (v.is_null()) {
        return "n/a";
    }
    return v.get<bool>() ? "true" : "false";
}

std::string half_integer(std::int64_t doubled) {
    return doubled % 2 == 0 ? std::to_string(doubled / 2) : std::to_string(doubled) + "/2";
}

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --- text renderings, built from the structured documents ----------------

void print_check(const ordered_json& r, std::ostream& out) {
    out << "matrix:           " << r["matrix"].get<std::string>() << '\n'
        << "dimension:        " << r["dimension"] << '\n'
        << "strictly_upper:   " << yes_no(r["strictly_upper"]) << '\n'
        << "kahler:           " << yes_no(r["kahler"]) << '\n'
        << "orientable:       " << yes_no(r["orientable"]) << '\n'
        << "spin_theorem:     " << yes_no(r["spin_theorem"]) << '\n'
        << "spin_oracle:      " << yes_no(r["spin_oracle"]) << '\n'
        << "w2_in_ideal:      " << yes_no(r["w2_in_ideal"]) << '\n'
        << "reduced_row_sums: ";
    if (r["reduced_row_sums"].is_null()) {
        out << "n/a\n";
    } else {
        std::string s;
        for (const auto& v : r["reduced_row_sums"]) {
            s += (s.empty() ? "" : " ") + std::to_string(v.get<int>());
        }
        out << s << '\n';
    }
}

void print_sw(const ordered_json& r, std::ostream& out) {
    out << "variables: " << r["variables"] << ", columns: " << r["columns"] << '\n';
    for (const auto& c : r["classes"]) {
        const auto j = std::to_string(c["column"].get<std::size_t>());
        out << "alpha_" << j << " = " << c["alpha"].get<std::string>() << '\n'
            << "beta_" << j << "  = " << c["beta"].get<std::string>() << '\n'
            << "theta_" << j << " = " << c["theta"].get<std::string>() << '\n';
    }
    out << "w1 = " << r["w1"].get<std::string>() << '\n'
        << "w2 = " << r["w2"].get<std::string>() << '\n'
        << "ideal degree-2 rank = " << r["ideal_deg2_rank"] << '\n';
}

void print_pmatrix(const ordered_json& r, std::ostream& out) {
    for (const auto& row : r["matrix"]) {
        out << row.get<std::string>() << '\n';
    }
    out << "free_action:      " << yes_no(r["free_action"]) << '\n'
        << "full_holonomy:    " << yes_no(r["full_holonomy"]) << '\n'
        << "orientable:       " << yes_no(r["orientable"]) << '\n'
        << "w2_in_ideal:      " << yes_no(r["w2_in_ideal"]) << '\n'
        << "spin_oracle:      " << yes_no(r["spin_oracle"]) << '\n';
}

void print_generators(const ordered_json& r, std::ostream& out) {
    for (const auto& g : r["generators"]) {
        out << "s" << g["index"] << " = " << g["text"].get<std::string>() << '\n';
    }
    for (const auto& g : r["generators"]) {
        out << "s" << g["index"] << "^2 = " << g["square"].get<std::string>() << '\n';
    }
    out << "squares_are_unit_translations: " << yes_no(r["squares_are_unit_translations"]) << '\n';
}

void print_verify(const ordered_json& r, std::ostream& out) {
    const auto& red = r["reduced"];
    out << "matrix:           " << r["matrix"].get<std::string>() << '\n'
        << "kept columns:     " << join_indices(red["kept_columns"].get<std::vector<std::size_t>>(), " ") << '\n';
    std::string sums;
    for (const auto& v : red["row_sums"]) {
        sums += (sums.empty() ? "" : " ") + std::to_string(v.get<int>());
    }
    out << "reduced row sums: " << sums << '\n'
        << "J = {" << join_indices(r["j_set"].get<std::vector<std::size_t>>()) << "}\n"
        << "K = {";
    bool first = true;
    for (const auto& p : r["k_set"]) {
        out << (first ? "" : ", ") << '(' << p[0] << ',' << p[1] << ')';
        first = false;
    }
    out << "}\n"
        << "w2 = " << r["w2"].get<std::string>() << '\n'
        << "sum of x_j^2 over J = " << r["w2_from_row_sums"].get<std::string>() << " (matches: "
        << yes_no(r["w2_matches_row_sums"]) << ")\n";
    for (std::size_t k = 0; k < r["thetas"].size(); ++k) {
        out << "theta_" << k + 1 << " = " << r["thetas"][k].get<std::string>() << '\n';
    }
    out << "echelon basis of span(theta), rank " << r["basis"].size() << ":\n";
    for (std::size_t k = 0; k < r["basis"].size(); ++k) {
        const auto& b = r["basis"][k];
        out << "  r" << k + 1 << " [pivot " << b["pivot"].get<std::string>() << "] = " << b["vector"].get<std::string>()
            << ", from theta_{" << join_indices(b["thetas"].get<std::vector<std::size_t>>()) << "}\n";
    }
    out << "reduction of w2:\n"
        << "  start: " << r["w2"].get<std::string>() << '\n';
    for (const auto& s : r["reduction"]) {
        out << "  + r" << s["row"] << " -> " << s["residual"].get<std::string>() << '\n';
    }
    out << "residual: " << r["residual"].get<std::string>() << '\n'
        << "w2 in ideal: " << yes_no(r["w2_in_ideal"]);
    if (r["w2_in_ideal"].get<bool>()) {
        out << " (w2 = sum of theta_{" << join_indices(r["combination"].get<std::vector<std::size_t>>()) << "})";
    }
    out << '\n'
        << "spin_theorem: " << yes_no(r["spin_theorem"]) << '\n'
        << "spin_oracle:  " << yes_no(r["spin_oracle"]) << '\n'
        << (r["agree"].get<bool>() ? "verdicts agree" : "VERDICTS DISAGREE") << '\n';
}

void print_census(const ordered_json& r, std::ostream& out) {
    out << "dimension:             " << r["dimension"] << '\n'
        << "total:                 " << r["total"] << '\n'
        << "kahler_count:          " << r["kahler_count"] << '\n'
        << "spin_by_theorem_count: " << r["spin_by_theorem_count"] << '\n'
        << "spin_by_oracle_count:  "
        << (r["spin_by_oracle_count"].is_null() ? std::string("n/a") : r["spin_by_oracle_count"].dump()) << '\n'
        << "orientable_count:      " << r["orientable_count"] << '\n'
        << "mismatch_count:        " << r["mismatch_count"] << '\n';
    for (const auto& m : r["mismatches"]) {
        out << "  mismatch #" << m["index"] << ": " << m["matrix"].get<std::string>()
            << " theorem=" << yes_no(m["spin_theorem"]) << " oracle=" << yes_no(m["spin_oracle"]) << '\n';
    }
    if (r["mismatches_truncated"].get<bool>()) {
        out << "  (mismatch list truncated)\n";
    }
    out << "elapsed_seconds:       " << std::fixed << std::setprecision(3) << r["elapsed_seconds"].get<double>()
        << '\n';
}

ordered_json header(const char* report) {
    ordered_json j;
    j["schema_version"] = report_schema_version;
    j["report"] = report;
    return j;
}

} // namespace

// --- structured reports --------------------------------------------------

ordered_json check_report(const BottMatrix& a) {
    const auto e = to_pmatrix(a);
    const auto sw = sw_data(e);
    const bool orientable = sw.w1.is_zero();
    const bool member = characteristic_ideal_deg2(sw, e.rows()).contains(deg2_to_vector(sw.w2, e.rows()));
    const bool kahler = is_kahler(a);

    auto j = header("check");
    j["matrix"] = a.to_inline();
    j["dimension"] = a.dimension();
    j["strictly_upper"] = true;
    j["kahler"] = kahler;
    j["orientable"] = orientable;
    j["spin_theorem"] = kahler ? ordered_json(spin_main_theorem(a)) : ordered_json();
    j["spin_oracle"] = orientable && member;
    j["w2_in_ideal"] = member;
    if (kahler) {
        const auto r = reduce(a);
        j["reduced_row_sums"] = r.row_sums;
        j["kept_columns"] = r.kept_columns;
    } else {
        j["reduced_row_sums"] = nullptr;
        j["kept_columns"] = nullptr;
    }
    return j;
}

ordered_json sw_report(const PMatrix& e) {
    const auto sw = sw_data(e);
    auto j = header("sw");
    j["variables"] = e.rows();
    j["columns"] = e.cols();
    ordered_json classes = ordered_json::array();
    for (std::size_t c = 1; c <= e.cols(); ++c) {
        classes.push_back({{"column", c},
                           {"alpha", class_alpha(e, c).to_string()},
                           {"beta", class_beta(e, c).to_string()},
                           {"theta", sw.thetas[c - 1].to_string()}});
    }
    j["classes"] = std::move(classes);
    j["w1"] = sw.w1.to_string();
    j["w2"] = sw.w2.to_string();
    j["w2_coordinates"] = deg2_to_vector(sw.w2, e.rows()).support();
    j["ideal_deg2_rank"] = characteristic_ideal_deg2(sw, e.rows()).dimension();
    return j;
}

ordered_json pmatrix_report(const PMatrix& e) {
    const auto sw = sw_data(e);
    const bool orientable = sw.w1.is_zero();
    const bool member = characteristic_ideal_deg2(sw, e.rows()).contains(deg2_to_vector(sw.w2, e.rows()));
    auto j = header("pmatrix");
    j["rows"] = e.rows();
    j["cols"] = e.cols();
    j["matrix"] = matrix_rows(e);
    j["free_action"] = is_free_action(e);
    j["full_holonomy"] = has_full_holonomy(e);
    j["orientable"] = orientable;
    j["w2_in_ideal"] = member;
    j["spin_oracle"] = orientable && member;
    return j;
}

ordered_json generators_report(const BottMatrix& a) {
    const auto gens = generators(a);
    const std::size_t n = a.dimension();
    auto j = header("generators");
    j["dimension"] = n;
    ordered_json list = ordered_json::array();
    bool squares_ok = true;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto square = gens[i] * gens[i];
        squares_ok = squares_ok && square == AffineIsometry::unit_translation(n, i + 1);
        std::vector<std::string> translation;
        for (auto t : gens[i].doubled_translation()) {
            translation.push_back(half_integer(t));
        }
        list.push_back({{"index", i + 1},
                        {"signs", gens[i].signs()},
                        {"translation", translation},
                        {"text", gens[i].to_string()},
                        {"square", square.to_string()}});
    }
    j["generators"] = std::move(list);
    j["squares_are_unit_translations"] = squares_ok;
    return j;
}

ordered_json verify_report(const BottMatrix& a) {
    const auto witness = spin_witness(a);
    const auto e = to_pmatrix(a);
    const std::size_t d = e.rows();
    const auto sw = sw_data(e);
    const auto space = characteristic_ideal_deg2(sw, d);
    const auto w2 = deg2_to_vector(sw.w2, d);
    const auto reduction = space.reduce(w2);

    F2Polynomial from_row_sums;
    for (auto i : witness.j_set) {
        from_row_sums += F2Polynomial(Monomial::variable(static_cast<Variable>(i), 2));
    }

    auto bits_to_indices = [](const boost::dynamic_bitset<std::uint64_t>& b) {
        std::vector<std::size_t> out;
        for (auto k = b.find_first(); k != boost::dynamic_bitset<std::uint64_t>::npos; k = b.find_next(k)) {
            out.push_back(k + 1);
        }
        return out;
    };

    auto j = header("verify");
    j["matrix"] = a.to_inline();
    j["dimension"] = a.dimension();
    j["reduced"] = {{"kept_columns", witness.reduced.kept_columns}, {"row_sums", witness.reduced.row_sums}};
    j["j_set"] = witness.j_set;
    ordered_json k_set = ordered_json::array();
    for (const auto& [row, col] : witness.k_set) {
        k_set.push_back({row, col});
    }
    j["k_set"] = std::move(k_set);
    j["w1"] = sw.w1.to_string();
    j["w2"] = sw.w2.to_string();
    j["w2_from_row_sums"] = from_row_sums.to_string();
    j["w2_matches_row_sums"] = from_row_sums == sw.w2;
    ordered_json thetas = ordered_json::array();
    for (const auto& t : sw.thetas) {
        thetas.push_back(t.to_string());
    }
    j["thetas"] = std::move(thetas);
    ordered_json basis = ordered_json::array();
    for (const auto& row : space.rows()) {
        const auto [pi, pj] = Deg2Vector::pair_at(row.pivot, d);
        basis.push_back({{"pivot", (Monomial::variable(pi) * Monomial::variable(pj)).to_string()},
                         {"vector", vector_to_deg2(row.vector).to_string()},
                         {"thetas", bits_to_indices(row.combination)}});
    }
    j["basis"] = std::move(basis);
    ordered_json steps = ordered_json::array();
    for (const auto& s : reduction.steps) {
        steps.push_back({{"row", s.row + 1}, {"residual", vector_to_deg2(s.residual).to_string()}});
    }
    j["reduction"] = std::move(steps);
    j["residual"] = vector_to_deg2(reduction.residual).to_string();
    j["w2_in_ideal"] = reduction.member();
    j["combination"] = reduction.member() ? ordered_json(bits_to_indices(reduction.combination)) : ordered_json();
    const bool oracle = sw.w1.is_zero() && reduction.member();
    j["spin_theorem"] = witness.spin;
    j["spin_oracle"] = oracle;
    j["agree"] = witness.spin == oracle;
    return j;
}

// --- command dispatch ----------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kaehler and spin structures on real Bott manifolds", "rbk"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all", "Expand all help");

    struct MatrixInput {
        std::string file;
        std::string inline_rows;
        std::string pmatrix_file;
    };
    std::string format = "text";
    const std::vector<std::string> formats{"text", "json"};

    auto add_matrix_input = [&](CLI::App* cmd, MatrixInput& in, bool allow_pmatrix) {
        auto* file = cmd->add_option("file", in.file, "Bott matrix file ('-' for stdin)");
        auto* inl = cmd->add_option("-m,--matrix", in.inline_rows, "Bott matrix rows separated by ';', e.g. 011;001;000");
        file->excludes(inl);
        if (allow_pmatrix) {
            auto* pm = cmd->add_option("-p,--pmatrix", in.pmatrix_file, "P-matrix file instead of a Bott matrix");
            pm->excludes(file)->excludes(inl);
        }
        cmd->add_option("-f,--format", format, "Output format")->check(CLI::IsMember(formats));
    };

    MatrixInput check_in, sw_in, pm_in, gen_in, verify_in;
    auto* check = app.add_subcommand("check", "Kaehler, orientability and spin verdicts for a Bott matrix");
    add_matrix_input(check, check_in, false);
    auto* sw = app.add_subcommand("sw", "Cohomology classes alpha_j, beta_j, theta_j and w1, w2");
    add_matrix_input(sw, sw_in, true);
    auto* pm = app.add_subcommand("pmatrix", "P-matrix and its action predicates");
    add_matrix_input(pm, pm_in, true);
    auto* gen = app.add_subcommand("generators", "Generators s_i of the fundamental group");
    add_matrix_input(gen, gen_in, false);
    auto* verify = app.add_subcommand("verify", "Criterion and oracle side by side, with the w2 reduction");
    add_matrix_input(verify, verify_in, false);

    std::size_t dim = 0;
    std::size_t workers = 1;
    std::size_t max_dim = 0;
    bool no_oracle = false;
    bool quiet = false;
    std::string output;
    std::string census_format = "json";
    auto* census = app.add_subcommand("census", "Enumerate every Bott matrix of one dimension");
    census->add_option("-d,--dim", dim, "Dimension n")->required()->check(CLI::PositiveNumber);
    census->add_option("-w,--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    census->add_flag("--no-oracle", no_oracle, "Skip the cohomological oracle");
    census->add_option("--max-dim", max_dim, "Dimension ceiling (default 8 with the oracle, 10 without)");
    census->add_option("-o,--output", output, "Write the report to this file instead of stdout");
    census->add_option("-f,--format", census_format, "Output format")->check(CLI::IsMember(formats));
    census->add_flag("-q,--quiet", quiet, "No progress on stderr");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input_error;
    }

    auto load_bott = [&](const MatrixInput& in) -> BottMatrix {
        if (!in.inline_rows.empty()) {
            return parse_bott_inline(in.inline_rows);
        }
        if (in.file.empty()) {
            throw Error("no matrix given: pass a file or --matrix");
        }
        return parse_bott(read_file(in.file));
    };
    auto load_pmatrix = [&](const MatrixInput& in) -> PMatrix {
        if (!in.pmatrix_file.empty()) {
            return parse_pmatrix(read_file(in.pmatrix_file));
        }
        return to_pmatrix(load_bott(in));
    };
    auto emit = [&](const ordered_json& doc, void (*text)(const ordered_json&, std::ostream&)) {
        if (format == "json") {
            out << doc.dump(2) << '\n';
        } else {
            text(doc, out);
        }
    };

    try {
        if (*check) {
            try {
                emit(check_report(load_bott(check_in)), print_check);
            } catch (const NotStrictlyUpperTriangular& e) {
                if (format == "json") {
                    auto doc = header("check");
                    doc["strictly_upper"] = false;
                    doc["violation"] = {e.row(), e.col()};
                    out << doc.dump(2) << '\n';
                }
                throw;
            }
        } else if (*sw) {
            emit(sw_report(load_pmatrix(sw_in)), print_sw);
        } else if (*pm) {
            emit(pmatrix_report(load_pmatrix(pm_in)), print_pmatrix);
        } else if (*gen) {
            const auto doc = generators_report(load_bott(gen_in));
            emit(doc, print_generators);
            if (!doc["squares_are_unit_translations"].get<bool>()) {
                err << "error: some s_i^2 is not the unit translation e_i\n";
                return exit_inconsistent;
            }
        } else if (*verify) {
            const auto a = load_bott(verify_in);
            if (!is_kahler(a)) {
                err << "error: verify needs a Kaehler Bott matrix (columns must split into equal pairs)\n";
                return exit_input_error;
            }
            const auto doc = verify_report(a);
            emit(doc, print_verify);
            if (!doc["agree"].get<bool>() || !doc["w2_matches_row_sums"].get<bool>()) {
                err << "error: criterion and oracle disagree\n";
                return exit_inconsistent;
            }
        } else if (*census) {
            CensusOptions options;
            options.oracle = !no_oracle;
            options.workers = workers;
            options.max_dimension = max_dim;
            if (!quiet) {
                options.progress = [&err](std::uint64_t done, std::uint64_t total) {
                    err << "\rcensus: " << done << " / " << total << std::flush;
                    if (done == total) {
                        err << '\n';
                    }
                };
            }
            const auto report = run_census(dim, options);
            const auto doc = to_json(report);
            std::ostringstream rendered;
            if (census_format == "json") {
                rendered << doc.dump(2) << '\n';
            } else {
                print_census(doc, rendered);
            }
            if (output.empty()) {
                out << rendered.str();
            } else {
                std::ofstream file(output, std::ios::binary);
                if (!file) {
                    throw Error("cannot write '" + output + "'");
                }
                file << rendered.str();
            }
            if (report.mismatch_count != 0) {
                err << "error: " << report.mismatch_count << " matrices where criterion and oracle disagree\n";
                return exit_inconsistent;
            }
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    return exit_ok;
}

} // namespace rbk::cli
