// Batch front-end over the exact PSL(2,N) toolkit: per-level irreducible
// inventories, ramification-module rows (single level or a sweep over a
// prime range, optionally cross-checked against the coset-sum oracle),
// equivariant Riemann-Roch queries for invariant divisors, the level-7
// quartic model, and the GF(43) evaluation-code pipeline.
//
// Output is deterministic for a fixed command line and seed: fixed key
// order in text, fixed columns in CSV, alphabetically ordered keys in
// JSON.  Errors are emitted as single-line JSON on stdout with a nonzero
// exit status (2 for usage problems, 1 for computational failures or
// cross-check discrepancies).

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xn/borne.hpp"
#include "xn/chartab.hpp"
#include "xn/curve.hpp"
#include "xn/fixtures.hpp"
#include "xn/psl2.hpp"
#include "xn/rammod.hpp"
#include "xn/rrcode.hpp"

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DiscrepancyError : std::runtime_error {
    std::vector<long> levels;
    DiscrepancyError(std::string message, std::vector<long> bad)
        : std::runtime_error(std::move(message)), levels(std::move(bad)) {}
};

// --- shared option plumbing -------------------------------------------------

struct CommonOptions {
    std::string format = "text";
    std::string out;
    bool paper_order = false;
    bool allow_small = false;
};

void add_common(CLI::App* cmd, CommonOptions* opts, bool with_small = true) {
    cmd->add_option("--format", opts->format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", opts->out, "write the report to this file");
    cmd->add_flag("--paper-order", opts->paper_order,
                  "order constituents as in the published tables "
                  "(stored for levels 5, 7, 11, 13)");
    if (with_small) {
        cmd->add_flag("--allow-small", opts->allow_small,
                      "accept level 5 (degenerate: the quotient is rational)");
    }
}

// A level argument accepted either positionally or as --n.
struct LevelArg {
    long positional = 0;
    long flag = 0;

    void add(CLI::App* cmd) {
        cmd->add_option("level", positional, "prime level");
        cmd->add_option("--n", flag, "prime level (alternative to the positional)");
    }

    long resolve() const {
        if (positional != 0 && flag != 0 && positional != flag) {
            throw UsageError("conflicting levels: positional " +
                             std::to_string(positional) + " vs --n " +
                             std::to_string(flag));
        }
        long n = positional != 0 ? positional : flag;
        if (n == 0) throw UsageError("a prime level is required (positional or --n)");
        return n;
    }
};

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

void validate_level(long n, bool allow_small) {
    if (n < 5 || !is_prime(n)) {
        throw UsageError("level must be a prime >= 7 (or 5 with --allow-small), got " +
                         std::to_string(n));
    }
    if (n == 5 && !allow_small) {
        throw UsageError("level 5 is degenerate; pass --allow-small to proceed");
    }
}

// --- ordering of the constituent rows ----------------------------------------

bool has_published_order(long n) {
    return n == 5 || n == 7 || n == 11 || n == 13;
}

std::vector<std::size_t> output_order(long n, std::size_t count, bool paper) {
    if (paper) {
        if (!has_published_order(n)) {
            throw UsageError("no stored published ordering for level " +
                             std::to_string(n));
        }
        std::vector<std::size_t> order = xn::fixtures::published_table_order(n);
        if (order.size() != count) {
            throw std::logic_error("stored ordering has the wrong length");
        }
        return order;
    }
    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = i;
    return order;
}

std::string ordering_name(bool paper) { return paper ? "published" : "canonical"; }

// --- small formatting helpers -------------------------------------------------

std::string row_str(const xn::VirtualModule& mults,
                    const std::vector<std::size_t>& order,
                    const char* sep) {
    std::string out = "[";
    for (std::size_t p = 0; p < order.size(); ++p) {
        if (p != 0) out += sep;
        out += mults.at(order[p]).get_str();
    }
    out += "]";
    return out;
}

json row_json_integers(const xn::VirtualModule& mults,
                       const std::vector<std::size_t>& order) {
    json arr = json::array();
    for (std::size_t index : order) {
        const xn::Rational& v = mults.at(index);
        if (v.get_den() != 1) {
            throw std::logic_error("expected an integral multiplicity");
        }
        arr.push_back(v.get_num().get_si());
    }
    return arr;
}

json row_json_strings(const xn::VirtualModule& mults,
                      const std::vector<std::size_t>& order) {
    json arr = json::array();
    for (std::size_t index : order) arr.push_back(mults.at(index).get_str());
    return arr;
}

std::string joined_names(const xn::CharacterTable& table,
                         const std::vector<std::size_t>& order) {
    std::string out;
    for (std::size_t p = 0; p < order.size(); ++p) {
        if (p != 0) out += ", ";
        out += table.irreducibles().at(order[p]).str();
    }
    return out;
}

json names_json(const xn::CharacterTable& table,
                const std::vector<std::size_t>& order) {
    json arr = json::array();
    for (std::size_t index : order) {
        arr.push_back(table.irreducibles().at(index).str());
    }
    return arr;
}

const char* yesno(bool b) { return b ? "yes" : "no"; }
const char* truefalse(bool b) { return b ? "true" : "false"; }

void emit(const std::string& content, const CommonOptions& opts) {
    if (opts.out.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream file(opts.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + opts.out);
    file << content;
    if (!file) throw std::runtime_error("failed writing output file: " + opts.out);
}

// --- cross-checks shared by `rammod` and `sweep` ------------------------------

// Definition vs closed form, the invariance pattern, and the Galois-average
// identity for the jk row.  Returns a description of the first failure.
std::optional<std::string> report_discrepancy(const xn::CharacterTable& table,
                                              const xn::RamificationReport& report) {
    if (report.definitional != report.closed_form) {
        return "closed form differs from the definitional module";
    }
    if (report.galois_invariant != (report.N % 4 == 1)) {
        return "Galois invariance does not follow the residue pattern mod 4";
    }
    if (report.jk != table.galois_average(report.definitional)) {
        return "jk row is not the Galois average of the definitional module";
    }
    if (report.galois_invariant && report.jk != report.definitional) {
        return "invariant level but jk row differs from the definitional module";
    }
    return std::nullopt;
}

// Literal coset-sum induction against the algebraic route, every linear
// character of all three distinguished subgroups.  Needs element
// enumeration, hence the level cap.
std::optional<std::string> oracle_discrepancy(const xn::Psl2Context& ctx,
                                              const xn::CharacterTable& table) {
    for (int which = 1; which <= 3; ++which) {
        const long h = static_cast<long>(ctx.H(which).size());
        for (long j = 0; j < h; ++j) {
            std::vector<xn::Cyclotomic> theta;
            theta.reserve(static_cast<std::size_t>(h));
            for (long a = 0; a < h; ++a) {
                theta.push_back(xn::Cyclotomic::root_of_unity(h, j * a));
            }
            const xn::ClassFunction oracle =
                table.class_function(ctx.induced_character_oracle(which, theta));
            if (oracle != table.induce_linear(which, j)) {
                return "coset-sum induction differs from the algebraic route at "
                       "subgroup H" + std::to_string(which) + ", character " +
                       std::to_string(j);
            }
        }
    }
    return std::nullopt;
}

// --- chartab ------------------------------------------------------------------

std::string run_chartab(long n, const CommonOptions& opts) {
    validate_level(n, opts.allow_small);
    xn::Psl2Context ctx(n);
    xn::CharacterTable table(ctx);
    table.verify_orthogonality();

    const auto order = output_order(n, table.count(), opts.paper_order);

    if (opts.format == "json") {
        json doc;
        doc["level"] = n;
        doc["group_order"] = ctx.order();
        doc["classes"] = ctx.classes().size();
        doc["count"] = table.count();
        doc["ordering"] = ordering_name(opts.paper_order);
        doc["names"] = names_json(table, order);
        json dims = json::array();
        for (std::size_t index : order) {
            dims.push_back(table.irreducibles().at(index).dim);
        }
        doc["dims"] = dims;
        doc["orthogonality"] = "verified";
        return doc.dump(2) + "\n";
    }

    if (opts.format == "csv") {
        std::ostringstream out;
        out << "index,name,dim\n";
        for (std::size_t p = 0; p < order.size(); ++p) {
            const auto& irr = table.irreducibles().at(order[p]);
            out << p << "," << irr.str() << "," << irr.dim << "\n";
        }
        return out.str();
    }

    std::ostringstream out;
    out << "level: " << n << "\n";
    out << "group order: " << ctx.order() << "\n";
    out << "classes: " << ctx.classes().size() << "\n";
    out << "irreducibles: " << table.count() << "\n";
    out << "ordering: " << ordering_name(opts.paper_order) << "\n";
    for (std::size_t p = 0; p < order.size(); ++p) {
        const auto& irr = table.irreducibles().at(order[p]);
        out << "  " << p << ": " << irr.str() << " (dim " << irr.dim << ")\n";
    }
    out << "orthogonality: verified\n";
    return out.str();
}

// --- rammod -------------------------------------------------------------------

std::string run_rammod(long n, const CommonOptions& opts) {
    validate_level(n, opts.allow_small);
    xn::Psl2Context ctx(n);
    xn::CharacterTable table(ctx);
    xn::RamificationReport report = xn::ramification_report(table);

    if (auto bad = report_discrepancy(table, report)) {
        throw DiscrepancyError("level " + std::to_string(n) + ": " + *bad, {n});
    }

    const auto order = output_order(n, table.count(), opts.paper_order);

    if (opts.format == "json") {
        json doc;
        doc["level"] = n;
        doc["group_order"] = ctx.order();
        doc["ordering"] = ordering_name(opts.paper_order);
        doc["constituents"] = names_json(table, order);
        doc["definition"] = row_json_integers(report.definitional, order);
        doc["closed_form"] = row_json_integers(report.closed_form, order);
        doc["jk"] = row_json_strings(report.jk, order);
        doc["jk_closure"] = row_json_integers(report.jk_closure, order);
        doc["galois_invariant"] = report.galois_invariant;
        doc["galois_image_order"] = report.galois_image_order;
        return doc.dump(2) + "\n";
    }

    if (opts.format == "csv") {
        std::ostringstream out;
        out << "N,ordering,m_definition[],m_jk[],galois_invariant\n";
        out << n << "," << ordering_name(opts.paper_order) << ","
            << row_str(report.definitional, order, ";") << ","
            << row_str(report.jk, order, ";") << ","
            << truefalse(report.galois_invariant) << "\n";
        return out.str();
    }

    std::ostringstream out;
    out << "level: " << n << "\n";
    out << "group order: " << ctx.order() << "\n";
    out << "ordering: " << ordering_name(opts.paper_order) << "\n";
    out << "constituents: " << joined_names(table, order) << "\n";
    out << "definition: " << row_str(report.definitional, order, ", ") << "\n";
    out << "closed form: " << row_str(report.closed_form, order, ", ") << "\n";
    out << "jk formula: " << row_str(report.jk, order, ", ") << "\n";
    out << "jk closure: " << row_str(report.jk_closure, order, ", ") << "\n";
    out << "galois invariant: " << yesno(report.galois_invariant) << "\n";
    if (report.galois_invariant) {
        out << "agreement: definition = closed form = jk formula\n";
    } else {
        out << "agreement: definition = closed form; jk is the Galois average\n";
    }
    return out.str();
}

// --- borne --------------------------------------------------------------------

std::string run_borne(long n, const std::string& divisor_spec,
                      const CommonOptions& opts) {
    validate_level(n, opts.allow_small);
    xn::GDivisor divisor = xn::parse_divisor(divisor_spec);
    xn::Psl2Context ctx(n);
    xn::CharacterTable table(ctx);
    const xn::NonSpecialityCheck check = xn::is_nonspecial(ctx, divisor);
    // refuses with std::domain_error when non-speciality is not established
    const xn::RRDecomposition decomp = xn::riemann_roch_module(table, divisor);

    const auto order = output_order(n, table.count(), opts.paper_order);

    if (opts.format == "csv") {
        throw UsageError("csv output is not available for borne; use text or json");
    }

    if (opts.format == "json") {
        json doc;
        doc["level"] = n;
        doc["divisor"] = xn::divisor_str(divisor);
        doc["degree"] = xn::divisor_degree(ctx, divisor);
        doc["genus"] = xn::genus(n);
        doc["nonspecial"] = check.established;
        doc["reason"] = check.reason;
        doc["ordering"] = ordering_name(opts.paper_order);
        doc["constituents"] = names_json(table, order);
        doc["equiv_deg"] = row_json_integers(decomp.equiv_deg, order);
        doc["L_module"] = row_json_integers(decomp.l_module, order);
        doc["dim"] = decomp.dimension;
        return doc.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "level: " << n << "\n";
    out << "divisor: " << xn::divisor_str(divisor) << "\n";
    out << "degree: " << xn::divisor_degree(ctx, divisor) << "\n";
    out << "genus: " << xn::genus(n) << "\n";
    out << "nonspecial: " << (check.established ? "established" : "not established")
        << " (" << check.reason << ")\n";
    out << "ordering: " << ordering_name(opts.paper_order) << "\n";
    out << "constituents: " << joined_names(table, order) << "\n";
    out << "equiv_deg: " << row_str(decomp.equiv_deg, order, ", ") << "\n";
    out << "L module: " << row_str(decomp.l_module, order, ", ") << "\n";
    out << "dim: " << decomp.dimension << "\n";
    return out.str();
}

// --- klein --------------------------------------------------------------------

std::string run_klein(long n, std::optional<long> field_p,
                      const CommonOptions& opts) {
    const xn::KleinSystem system = xn::klein_relations(n);

    std::optional<xn::KleinContext> geometry;
    if (field_p) {
        if (n != 7) {
            throw UsageError("point enumeration is pinned to level 7");
        }
        geometry = xn::make_klein_context(*field_p);  // validates the prime
    }

    if (opts.format == "csv") {
        throw UsageError("csv output is not available for klein; use text or json");
    }

    if (opts.format == "json") {
        json doc = json::parse(xn::klein_system_to_json(system));
        if (geometry) {
            doc["field"] = geometry->field.p();
            doc["rational_points"] = geometry->points.size();
            doc["orbit_size"] = geometry->orbit_points.size();
            doc["evaluation_points"] = geometry->eval_points.size();
            json orbit = json::array();
            for (const auto& point : geometry->orbit_points) {
                orbit.push_back(point.coords);
            }
            doc["orbit"] = orbit;
        }
        return doc.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "level: " << n << "\n";
    out << "variables: " << system.vars << "\n";
    out << "relations: " << system.relations.size() << "\n";
    for (const xn::IntPoly& f : system.relations) {
        out << "  " << f.str("y") << " = 0\n";
    }
    if (geometry) {
        out << "field: GF(" << geometry->field.p() << ")\n";
        out << "rational points: " << geometry->points.size() << "\n";
        out << "distinguished orbit: " << geometry->orbit_points.size() << "\n";
        out << "evaluation points: " << geometry->eval_points.size() << "\n";
        out << "orbit fibers: " << geometry->fiber_values.size() << "\n";
    }
    return out.str();
}

// --- code ---------------------------------------------------------------------

std::string run_code(long p, long r, std::uint64_t seed, std::uint64_t budget,
                     const CommonOptions& opts) {
    const xn::KleinContext context = xn::make_klein_context(p);
    const std::vector<xn::CurveFunction> basis = xn::rr_basis(context, r);
    const xn::EvaluationCode code = xn::evaluation_code(context, basis, r);
    const xn::DistanceBounds bounds = xn::distance_bounds(context, code, seed, budget);

    if (opts.format == "csv") {
        throw UsageError("csv output is not available for code; use text or json");
    }

    if (opts.format == "json") {
        json doc = json::parse(xn::code_to_json(code, &bounds));
        doc["field"] = p;
        doc["level"] = 7;
        doc["pole_order"] = r;
        doc["riemann_roch_dim"] = basis.size();
        doc["seed"] = seed;
        doc["budget"] = budget;
        doc["examined"] = bounds.examined;
        doc["distance_lower"] = bounds.lower;
        return doc.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "field: GF(" << p << ")\n";
    out << "level: 7\n";
    out << "pole order: " << r << "\n";
    out << "riemann-roch dim: " << basis.size() << "\n";
    out << "n: " << code.n << "\n";
    out << "k: " << code.k << "\n";
    if (code.designed_distance) {
        out << "designed_d: " << *code.designed_distance << "\n";
    } else {
        out << "designed_d: none (divisor degree reaches the length)\n";
    }
    out << "witness_d: " << bounds.witness_upper << "\n";
    out << "distance lower bound: " << bounds.lower << "\n";
    out << "search seed: " << seed << "\n";
    out << "search budget: " << budget << " (examined " << bounds.examined << ")\n";
    return out.str();
}

// --- sweep --------------------------------------------------------------------

struct SweepRow {
    long n = 0;
    bool published = false;
    std::string definition_commas;  // "[a, b, ...]"
    std::string jk_commas;
    std::string definition_semis;  // "[a;b;...]"
    std::string jk_semis;
    json definition_json;
    json jk_json;
    bool invariant = false;
    std::optional<std::string> problem;
};

std::string run_sweep(long max_n, bool oracle, const CommonOptions& opts) {
    const long first = opts.allow_small ? 5 : 7;
    if (max_n < first) {
        throw UsageError("--max-n must be at least " + std::to_string(first));
    }
    if (oracle && max_n > 61) {
        throw UsageError("--oracle requires --max-n <= 61 "
                         "(element enumeration is kept up to that level)");
    }

    std::vector<long> levels;
    for (long n = first; n <= max_n; ++n) {
        if (is_prime(n)) levels.push_back(n);
    }

    std::vector<SweepRow> rows(levels.size());
    std::atomic<std::size_t> next{0};
    const unsigned workers = std::max(
        1u, std::min({std::thread::hardware_concurrency(), 8u,
                      static_cast<unsigned>(levels.size())}));

    auto work = [&]() {
        for (std::size_t i = next.fetch_add(1); i < levels.size();
             i = next.fetch_add(1)) {
            SweepRow& row = rows[i];
            row.n = levels[i];
            try {
                xn::Psl2Context ctx(row.n);
                xn::CharacterTable table(ctx);
                xn::RamificationReport report = xn::ramification_report(table);
                row.problem = report_discrepancy(table, report);
                if (!row.problem && oracle) {
                    row.problem = oracle_discrepancy(ctx, table);
                }
                row.published = opts.paper_order && has_published_order(row.n);
                const auto order =
                    output_order(row.n, table.count(), row.published);
                row.definition_commas = row_str(report.definitional, order, ", ");
                row.jk_commas = row_str(report.jk, order, ", ");
                row.definition_semis = row_str(report.definitional, order, ";");
                row.jk_semis = row_str(report.jk, order, ";");
                row.definition_json = row_json_integers(report.definitional, order);
                row.jk_json = row_json_strings(report.jk, order);
                row.invariant = report.galois_invariant;
            } catch (const std::exception& e) {
                row.problem = e.what();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();

    std::vector<long> bad;
    std::string first_problem;
    for (const SweepRow& row : rows) {
        if (row.problem) {
            if (bad.empty()) {
                first_problem = "level " + std::to_string(row.n) + ": " + *row.problem;
            }
            bad.push_back(row.n);
        }
    }
    if (!bad.empty()) throw DiscrepancyError(first_problem, bad);

    if (opts.format == "json") {
        json arr = json::array();
        for (const SweepRow& row : rows) {
            json doc;
            doc["level"] = row.n;
            doc["ordering"] = ordering_name(row.published);
            doc["definition"] = row.definition_json;
            doc["jk"] = row.jk_json;
            doc["galois_invariant"] = row.invariant;
            arr.push_back(doc);
        }
        json doc;
        doc["max_level"] = max_n;
        doc["oracle"] = oracle;
        doc["rows"] = arr;
        return doc.dump(2) + "\n";
    }

    if (opts.format == "csv") {
        std::ostringstream out;
        out << "N,ordering,m_definition[],m_jk[],galois_invariant\n";
        for (const SweepRow& row : rows) {
            out << row.n << "," << ordering_name(row.published) << ","
                << row.definition_semis << "," << row.jk_semis << ","
                << truefalse(row.invariant) << "\n";
        }
        return out.str();
    }

    std::ostringstream out;
    out << "ramification sweep: " << levels.size() << " prime levels up to "
        << max_n << (oracle ? ", with the coset-sum oracle" : "") << "\n";
    for (const SweepRow& row : rows) {
        out << "N=" << row.n << " ordering=" << ordering_name(row.published)
            << " invariant=" << truefalse(row.invariant)
            << " definition=" << row.definition_commas
            << " jk=" << row.jk_commas << "\n";
    }
    out << "checks passed: closed form, invariance pattern, Galois average"
        << (oracle ? ", coset-sum oracle" : "") << "\n";
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact modular-curve module toolkit"};
    app.require_subcommand(1);

    CommonOptions chartab_opts, rammod_opts, borne_opts, klein_opts, code_opts,
        sweep_opts;
    LevelArg chartab_n, rammod_n, borne_n, klein_n;
    std::string divisor_spec;
    long code_p = 43, code_r = 1;
    std::uint64_t code_seed = 0, code_budget = 400000;
    long klein_p = 0;
    long sweep_max = 0;
    bool sweep_oracle = false;

    CLI::App* chartab = app.add_subcommand(
        "chartab", "irreducible inventory of the level's automorphism group");
    chartab_n.add(chartab);
    add_common(chartab, &chartab_opts);

    CLI::App* rammod = app.add_subcommand(
        "rammod", "ramification module: definition, closed form, jk rows");
    rammod_n.add(rammod);
    add_common(rammod, &rammod_opts);

    CLI::App* borne = app.add_subcommand(
        "borne", "equivariant Riemann-Roch decomposition of an invariant divisor");
    borne_n.add(borne);
    borne->add_option("--divisor", divisor_spec,
                      "divisor expression, e.g. \"2*D3 + D1\" "
                      "(kinds D0..D3, nonnegative multipliers)")
        ->required();
    add_common(borne, &borne_opts);

    CLI::App* klein = app.add_subcommand(
        "klein", "quartic relation system of the level's projective model");
    klein_n.add(klein);
    klein->add_option("--p", klein_p,
                      "also enumerate points over GF(p) (level 7, p = 43)");
    add_common(klein, &klein_opts, /*with_small=*/false);

    CLI::App* code = app.add_subcommand(
        "code", "evaluation code from the level-7 curve over GF(43)");
    code->add_option("--p", code_p, "field size")->capture_default_str();
    code->add_option("--r", code_r, "pole-order multiple of the orbit divisor")
        ->capture_default_str();
    code->add_option("--seed", code_seed, "witness-search seed")->required();
    code->add_option("--budget", code_budget, "witness-search work budget")
        ->capture_default_str();
    add_common(code, &code_opts, /*with_small=*/false);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "ramification rows for every prime level up to a bound");
    sweep->add_option("--max-n", sweep_max, "largest level to include")->required();
    sweep->add_flag("--oracle", sweep_oracle,
                    "cross-check inductions against the literal coset sums");
    add_common(sweep, &sweep_opts);

    auto fail = [](int exit_code, const std::string& kind,
                   const std::string& message,
                   const std::vector<long>* levels = nullptr) {
        json doc;
        doc["error"]["kind"] = kind;
        doc["error"]["message"] = message;
        if (levels) doc["error"]["levels"] = *levels;
        std::cout << doc.dump() << "\n";
        return exit_code;
    };

    try {
        app.parse(argc, argv);

        std::string content;
        const CommonOptions* opts = nullptr;
        if (chartab->parsed()) {
            opts = &chartab_opts;
            content = run_chartab(chartab_n.resolve(), chartab_opts);
        } else if (rammod->parsed()) {
            opts = &rammod_opts;
            content = run_rammod(rammod_n.resolve(), rammod_opts);
        } else if (borne->parsed()) {
            opts = &borne_opts;
            content = run_borne(borne_n.resolve(), divisor_spec, borne_opts);
        } else if (klein->parsed()) {
            opts = &klein_opts;
            std::optional<long> p;
            if (klein->count("--p") != 0) p = klein_p;
            content = run_klein(klein_n.resolve(), p, klein_opts);
        } else if (code->parsed()) {
            opts = &code_opts;
            content = run_code(code_p, code_r, code_seed, code_budget, code_opts);
        } else {
            opts = &sweep_opts;
            content = run_sweep(sweep_max, sweep_oracle, sweep_opts);
        }
        emit(content, *opts);
        return 0;
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        return fail(2, "usage", e.what());
    } catch (const UsageError& e) {
        return fail(2, "usage", e.what());
    } catch (const DiscrepancyError& e) {
        return fail(1, "discrepancy", e.what(), &e.levels);
    } catch (const std::invalid_argument& e) {
        return fail(2, "usage", e.what());
    } catch (const std::domain_error& e) {
        return fail(1, "computation", e.what());
    } catch (const std::exception& e) {
        return fail(1, "computation", e.what());
    }
}
