#include "taut/cli.hpp"

#include "taut/error.hpp"
#include "taut/json_io.hpp"
#include "taut/parallel.hpp"
#include "taut/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace taut {

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) continue;
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) throw Error(ErrorKind::InvalidArgument, "not an integer: '" + item + "'");
        out.push_back(value);
    }
    return out;
}

std::vector<std::vector<int>> parse_component_lists(const std::string& text) {
    std::vector<std::vector<int>> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ';')) out.push_back(parse_int_list(item));
    if (out.empty()) out.emplace_back();
    return out;
}

namespace {

struct Globals {
    std::string out = "json";
    int jobs = 1;
    std::uint64_t seed = 1;
};

struct ShapeFlags {
    std::optional<int> d, n, g, m;
    std::string degrees, sizes, genera;
    std::string k = "inf";
    std::vector<std::string> profiles;
    bool unparameterized = false;

    void add_pop_flags(CLI::App* cmd) {
        cmd->add_option("--d", d, "Degree (connected)");
        cmd->add_option("--n", n, "Number of ordered parts (connected)");
        cmd->add_option("--degrees", degrees, "Degree vector, e.g. 2,1");
        cmd->add_option("--sizes", sizes, "Marking-set sizes per component, e.g. 1,1");
        cmd->add_option("--k", k, "Length slack: integer or inf");
    }

    void add_graph_flags(CLI::App* cmd) {
        cmd->add_option("--g", g, "Genus (connected)");
        cmd->add_option("--genera", genera, "Genus vector");
        cmd->add_option("--d", d, "Degree (connected)");
        cmd->add_option("--degrees", degrees, "Degree vector");
        cmd->add_option("--n", n, "Number of markings (connected)");
        cmd->add_option("--sizes", sizes, "Marking-set sizes per component");
        cmd->add_option("--m", m, "Number of profiles");
        cmd->add_option("--profiles", profiles,
                        "Profiles; parts per component separated by ';', profiles by '|' or repeated flags");
        cmd->add_flag("--unparameterized", unparameterized, "Unparameterized target");
    }

    std::vector<int> degree_vector() const {
        if (!degrees.empty()) {
            if (d) throw Error(ErrorKind::InvalidArgument, "give --d or --degrees, not both");
            return parse_int_list(degrees);
        }
        if (!d) throw Error(ErrorKind::InvalidArgument, "missing --d or --degrees");
        return {*d};
    }

    std::vector<int> size_vector(std::size_t c, int fallback) const {
        if (!sizes.empty()) return parse_int_list(sizes);
        if (n) {
            if (c != 1) throw Error(ErrorKind::InvalidArgument, "--n applies to one component; use --sizes");
            return {*n};
        }
        return std::vector<int>(c, fallback);
    }

    RelativeShape relative_shape() const {
        RelativeShape s;
        s.degrees = degree_vector();
        const std::size_t c = s.degrees.size();
        if (!genera.empty()) s.genera = parse_int_list(genera);
        else s.genera.assign(c, g.value_or(0));
        if (c != 1 && g) throw Error(ErrorKind::InvalidArgument, "--g applies to one component; use --genera");
        s.marking_sets = consecutive_marking_sets(size_vector(c, 0));
        std::vector<std::string> items;
        for (const auto& flag : profiles) {
            std::stringstream in(flag);
            std::string item;
            while (std::getline(in, item, '|')) items.push_back(item);
        }
        for (const auto& item : items) {
            std::vector<Partition> mu;
            for (auto& parts : parse_component_lists(item)) mu.push_back(Partition::canonicalize(parts));
            s.profiles.push_back(std::move(mu));
        }
        if (s.profiles.empty()) {
            std::vector<Partition> ones;
            for (int di : s.degrees) ones.push_back(Partition::canonicalize(std::vector<int>(di, 1)));
            s.profiles.push_back(ones);
        }
        if (m) {
            if (*m < 1) throw Error(ErrorKind::InvalidShape, "--m must be positive");
            if (s.profiles.size() == 1) s.profiles.resize(*m, s.profiles.front());
            if (static_cast<int>(s.profiles.size()) != *m)
                throw Error(ErrorKind::InvalidShape, "--m disagrees with the number of profiles");
        }
        s.parameterized = !unparameterized;
        s.validate();
        return s;
    }
};

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    f << text;
}

json multi_shape_json(const std::vector<int>& degrees, const std::vector<std::vector<int>>& sets, const Slack& k) {
    return {{"degrees", degrees}, {"markingSets", sets}, {"k", k.to_string()}};
}

json witness_json(const EntryWitness& w) {
    return {{"row", to_json(w.row)},
            {"col", to_json(w.col)},
            {"expected", w.expected.to_string()},
            {"actual", w.actual.to_string()}};
}

// Adds 1 to the bottom-left entry of B, which makes C = B·A fail below the
// diagonal whenever A's first row is nonzero in column 0.
void flip_b_entry(IndexedMatrix& b) {
    if (b.size() >= 2) b.at(b.size() - 1, 0) += Rational(1);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact combinatorics engine for partially ordered partitions and localization graphs", "taut"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals globals;
    app.add_option("--out", globals.out, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--jobs", globals.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", globals.seed, "Seed for randomized sweeps");

    ShapeFlags shape;
    bool count_only = false;
    auto* pop = app.add_subcommand("pop", "Enumerate Π(d,n,k) or Π(𝐝,𝐧,k)");
    shape.add_pop_flags(pop);
    pop->add_flag("--count-only", count_only, "Print only the cardinality");

    std::string which, verify, output;
    bool experimental_multi = false;
    auto* matrix = app.add_subcommand("matrix", "Build M, A, B or C and optionally verify a property");
    shape.add_pop_flags(matrix);
    matrix->add_option("--which", which, "Matrix")->check(CLI::IsMember({"M", "A", "B", "C"}));
    matrix->add_option("--verify", verify, "Property")
        ->check(CLI::IsMember({"triangular", "invertible", "kronecker", "transpose-scaling"}));
    matrix->add_option("--output", output, "Write to a file instead of stdout");
    matrix->add_flag("--experimental-multi", experimental_multi, "Allow multi-component B and C");

    std::string suite = "all";
    int max = 12, binom_max = 15;
    auto* sums = app.add_subcommand("sums", "Check the closed sums and binomial identities");
    sums->add_option("--suite", suite, "alpha|beta|betaprime|gamma|binom|all");
    sums->add_option("--max", max, "Largest argument");
    sums->add_option("--binom-max", binom_max, "Largest n for the binomial identities");

    bool contributions = false, principal_only = false;
    std::optional<int> n_ordered;
    std::string alpha_dp;
    EnumerationBounds bounds;
    auto* graphs = app.add_subcommand("graphs", "Enumerate localization graphs");
    shape.add_graph_flags(graphs);
    graphs->add_flag("--contributions", contributions, "Attach m, |A|, case and the Euler inverse");
    graphs->add_flag("--principal-only", principal_only, "Keep graphs of principal type");
    graphs->add_option("--n-ordered", n_ordered, "Ordered marking count for principal classification");
    graphs->add_option("--alpha-dp", alpha_dp, "Parts of α″ for principal classification");
    graphs->add_option("--max-degree", bounds.max_degree, "Enumeration degree bound");
    graphs->add_option("--max-genus", bounds.max_genus, "Enumeration genus bound");
    graphs->add_option("--max-profiles", bounds.max_profiles, "Enumeration profile bound");

    std::string kind, left, right, ordered, unordered;
    auto* kernels = app.add_subcommand("kernels", "Evaluate S, T or η");
    kernels->add_option("--kind", kind, "s|t|eta")->required()->check(CLI::IsMember({"s", "t", "eta"}));
    kernels->add_option("--left", left, "α″ for S, q″ for T");
    kernels->add_option("--right", right, "β′ for S, p″ for T");
    kernels->add_option("--ordered", ordered, "Ordered parts of β for η");
    kernels->add_option("--unordered", unordered, "Unordered parts of β for η");

    std::optional<int> omega_trials;
    auto* dim = app.add_subcommand("dim", "Expected dimensions and dimension sweeps");
    shape.add_graph_flags(dim);
    dim->add_option("--omega-trials", omega_trials, "Run the randomized dimension sweep instead");

    int max_d = default_max_d(6), trials = 1000;
    std::string sidecar;
    bool inject_fault = false;
    auto* verify_all_cmd = app.add_subcommand("verify-all", "Run the full acceptance sweep");
    verify_all_cmd->add_option("--max-d", max_d, "Sweep bound (default from TAUT_MAX_D or 6)");
    verify_all_cmd->add_option("--trials", trials, "Randomized trials per sweep");
    verify_all_cmd->add_option("--sidecar", sidecar, "Write wall time to this JSON file");
    verify_all_cmd->add_flag("--inject-fault", inject_fault)->group("");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitInvalidInput;
    }

    try {
        const bool csv = globals.out == "csv";
        if (*pop) {
            const Slack k = Slack::parse(shape.k);
            const auto degrees = shape.degree_vector();
            const auto sizes = shape.size_vector(degrees.size(), 1);
            std::vector<std::string> lines;
            json list = json::array();
            std::size_t count = 0;
            if (degrees.size() == 1 && sizes.size() == 1) {
                const auto set = enumerate_pop(degrees[0], sizes[0], k);
                count = set.size();
                for (const auto& p : set) {
                    list.push_back(to_json(p));
                    lines.push_back(p.to_string());
                }
            } else {
                const auto sets = consecutive_marking_sets(sizes);
                validate_multi_shape(degrees, sets);
                const auto set = enumerate_pop_multi(degrees, sets, k);
                count = set.size();
                for (const auto& p : set) {
                    list.push_back(to_json(p));
                    lines.push_back(p.to_string());
                }
            }
            if (count_only) out << count << '\n';
            else if (csv)
                for (const auto& l : lines) out << l << '\n';
            else emit(out, list);
            return kExitPass;
        }

        if (*matrix) {
            const Slack k = Slack::parse(shape.k);
            const auto degrees = shape.degree_vector();
            const auto sets = consecutive_marking_sets(shape.size_vector(degrees.size(), 1));
            validate_multi_shape(degrees, sets);
            const bool connected = degrees.size() == 1;
            BuildOptions options{nullptr, globals.jobs};
            if (!verify.empty()) {
                json report = {{"check", verify}, {"shape", multi_shape_json(degrees, sets, k)}};
                bool pass = false;
                if (verify == "triangular") {
                    TriangularityReport rep;
                    if (connected) rep = verify_c(degrees[0], static_cast<int>(sets[0].size()), k, options);
                    else if (experimental_multi) rep = verify_c_multi(degrees, sets, k, options);
                    else throw Error(ErrorKind::InvalidArgument, "multi-component B needs --experimental-multi");
                    pass = rep.unit_upper_triangular;
                    if (rep.first_violation)
                        report["witness"] = {{"row", to_json(rep.first_violation->first)},
                                             {"col", to_json(rep.first_violation->second)}};
                } else if (verify == "invertible") {
                    const auto rep = verify_m_invertible(degrees, sets, k, options);
                    pass = rep.invertible;
                    report["det"] = rep.det.to_string();
                    report["size"] = rep.size;
                } else if (verify == "kronecker") {
                    const auto rep = verify_kronecker(degrees, sets, k, options);
                    pass = rep.pass;
                    report["size"] = rep.size;
                    if (rep.witness) report["witness"] = witness_json(*rep.witness);
                } else {
                    const auto rep = verify_m_transpose_scaling(degrees, sets, k, options);
                    pass = rep.pass;
                    if (rep.witness) report["witness"] = witness_json(*rep.witness);
                }
                report["pass"] = pass;
                if (output.empty()) emit(out, report);
                else write_text(output, report.dump(2) + "\n");
                return pass ? kExitPass : kExitVerificationFailure;
            }
            if (which.empty()) throw Error(ErrorKind::InvalidArgument, "matrix needs --which or --verify");
            IndexedMatrix m;
            if (which == "M") m = build_m(degrees, sets, k, options);
            else if (which == "A") m = build_a(degrees, sets, k, options);
            else if (connected) {
                const int n = static_cast<int>(sets[0].size());
                m = build_b(degrees[0], n, k, options);
                if (which == "C") m = multiply(m, build_a(degrees[0], n, k, options));
            } else if (experimental_multi) {
                m = build_b_multi(degrees, sets, k, options);
                if (which == "C") m = multiply(m, build_a(degrees, sets, k, options));
            } else {
                throw Error(ErrorKind::InvalidArgument, "multi-component B and C need --experimental-multi");
            }
            const std::string text = csv ? to_csv(m) : to_json(m).dump(2) + "\n";
            if (output.empty()) out << text;
            else write_text(output, text);
            return kExitPass;
        }

        if (*sums) {
            const auto r = suite_closed_sums(suite, max, binom_max);
            emit(out, to_json(r));
            return r.pass() ? kExitPass : kExitVerificationFailure;
        }

        if (*graphs) {
            const auto s = shape.relative_shape();
            const auto list = enumerate_graphs(s, bounds);
            const int nord = n_ordered.value_or(s.marking_count());
            const Partition dp = Partition::canonicalize(parse_int_list(alpha_dp));
            std::vector<json> entries(list.size());
            std::vector<char> keep(list.size(), 1);
            parallel_for(list.size(), globals.jobs, [&](std::size_t i) {
                json entry = {{"graph", to_json(list[i])}};
                const auto beta = classify_principal(list[i], nord, dp, s);
                entry["principalType"] = beta ? to_json(*beta) : json(nullptr);
                if (principal_only && !beta) keep[i] = 0;
                if (contributions) entry["contribution"] = to_json(contribution(list[i], s));
                entries[i] = std::move(entry);
            });
            json result = {{"shape", to_json(s)}, {"graphs", json::array()}};
            for (std::size_t i = 0; i < list.size(); ++i)
                if (keep[i]) result["graphs"].push_back(std::move(entries[i]));
            result["count"] = result["graphs"].size();
            emit(out, result);
            return kExitPass;
        }

        if (*kernels) {
            json result = {{"kind", kind}};
            if (kind == "eta") {
                const auto ord = parse_int_list(ordered);
                const auto unord = parse_int_list(unordered);
                int d = 0;
                for (int x : ord) d += x;
                for (int x : unord) d += x;
                const Pop beta = Pop::make(d, ord, unord);
                result["beta"] = to_json(beta);
                result["value"] = eta(beta).to_string();
            } else {
                const auto l = parse_int_list(left);
                const auto r = parse_int_list(right);
                result["left"] = l;
                result["right"] = r;
                result["value"] = (kind == "s" ? injection_sum_s(l, r) : injection_sum_t(l, r)).to_string();
            }
            emit(out, result);
            return kExitPass;
        }

        if (*dim) {
            if (omega_trials) {
                const auto r = suite_dimension(*omega_trials, globals.seed, 10);
                emit(out, to_json(r));
                return r.pass() ? kExitPass : kExitVerificationFailure;
            }
            RelativeShape s = shape.relative_shape();
            json result = {{"shape", to_json(s)},
                           {"vdimParameterized", vdim_parameterized(s)},
                           {"vdimUnparameterized", vdim_unparameterized(s)}};
            if (s.components() == 1) {
                std::vector<Partition> profiles;
                for (const auto& mu : s.profiles) profiles.push_back(mu[0]);
                result["hurwitz"] = hurwitz_condition(s.genera[0], profiles);
            }
            emit(out, result);
            return kExitPass;
        }

        if (*verify_all_cmd) {
            if (max_d < 1) throw Error(ErrorKind::InvalidRange, "--max-d must be positive");
            VerifyAllOptions options;
            options.max_d = max_d;
            options.jobs = globals.jobs;
            options.seed = globals.seed;
            options.trials = trials;
            if (inject_fault) options.fault_b = flip_b_entry;
            const auto start = std::chrono::steady_clock::now();
            const json report = verify_all(options);
            const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            emit(out, report);
            if (!sidecar.empty()) write_text(sidecar, json{{"wallTime", seconds}}.dump(2) + "\n");
            return report.at("pass").get<bool>() ? kExitPass : kExitVerificationFailure;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}

} // namespace taut
