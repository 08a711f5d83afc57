// eodv: command-line frontend for embedded order dependency validation.
//
// Exit codes: 0 the statement holds (or the command completed), 1 not valid,
// 2 usage or data error, 3 exhaustive search refused by the cap.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eod/bench.hpp"
#include "eod/embedding.hpp"
#include "eod/errors.hpp"
#include "eod/oracle.hpp"
#include "eod/relation.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitHolds = 0;
constexpr int kExitNotValid = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommonArgs {
    std::string dataset;
    std::vector<std::string> null_tokens;
    std::string delimiter = ",";
    bool no_header = false;
    std::string output = "human";
};

struct StatementArgs {
    std::string lhs;
    std::string rhs;
    std::string embedding;
    std::string op = "leq";
};

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

char parse_delimiter(const std::string& d) {
    if (d == "\\t" || d == "tab") return '\t';
    if (d.size() != 1) throw UsageError("delimiter must be a single character");
    return d[0];
}

eod::LoadOptions load_options(const CommonArgs& args) {
    eod::LoadOptions opts;
    opts.delimiter = parse_delimiter(args.delimiter);
    opts.header = !args.no_header;
    if (!args.null_tokens.empty()) {
        opts.null_tokens = {args.null_tokens.begin(), args.null_tokens.end()};
    } else if (const char* env = std::getenv("EOD_NULL_TOKENS")) {
        auto tokens = split_list(env);
        opts.null_tokens = {tokens.begin(), tokens.end()};
    }
    return opts;
}

eod::Relation load(const CommonArgs& args) {
    return eod::load_relation_file(args.dataset, load_options(args));
}

// Header name first, then a 1-based column index.
eod::AttrId resolve(const eod::Relation& r, const std::string& raw) {
    const std::string name = trim(raw);
    if (auto id = r.find(name)) return *id;
    if (!name.empty() && name.find_first_not_of("0123456789") == std::string::npos) {
        const auto index = std::stoull(name);
        if (index >= 1 && index <= r.num_attributes()) return index - 1;
    }
    throw UsageError("unknown attribute '" + name + "'");
}

eod::AttributeList resolve_list(const eod::Relation& r, const std::string& list) {
    eod::AttributeList out;
    for (const auto& name : split_list(list)) out.push_back(resolve(r, name));
    return out;
}

eod::Operator parse_op(const std::string& op) {
    if (op == "leq") return eod::Operator::Leq;
    if (op == "lt") return eod::Operator::Lt;
    throw UsageError("--op must be leq or lt");
}

eod::Statement build_statement(const eod::Relation& r, const StatementArgs& args) {
    eod::Statement stmt;
    stmt.lhs = resolve_list(r, args.lhs);
    stmt.rhs = resolve_list(r, args.rhs);
    stmt.op = parse_op(args.op);
    if (!args.embedding.empty()) {
        for (auto a : resolve_list(r, args.embedding)) stmt.embedding.insert(a);
    }
    for (auto a : stmt.lhs) stmt.embedding.insert(a);
    for (auto a : stmt.rhs) stmt.embedding.insert(a);
    eod::check_statement(r, stmt);
    return stmt;
}

std::string names_of(const eod::Relation& r, const std::vector<eod::AttrId>& ids, const char* open = "{",
                     const char* close = "}") {
    std::string out = open;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ",";
        out += r.attribute(ids[i]).name;
    }
    return out + close;
}

json names_json(const eod::Relation& r, const std::vector<eod::AttrId>& ids) {
    json arr = json::array();
    for (auto a : ids) arr.push_back(r.attribute(a).name);
    return arr;
}

std::string describe_statement(const eod::Relation& r, const eod::Statement& stmt) {
    return names_of(r, stmt.embedding.ids()) + ": " + names_of(r, stmt.lhs, "[", "]") + " " +
           std::string(eod::operator_symbol(stmt.op)) + " " + names_of(r, stmt.rhs, "[", "]");
}

std::string tuple_label(eod::TupleId t) { return "t" + std::to_string(t + 1); }

std::string describe_tuple(const eod::Relation& r, const eod::Statement& stmt, eod::TupleId t) {
    std::string out = tuple_label(t) + " (";
    bool first = true;
    for (auto a : stmt.embedding) {
        if (!first) out += ", ";
        first = false;
        out += r.attribute(a).name + "=" + r.value(t, a).to_string();
    }
    return out + ")";
}

std::string verdict_token(eod::Verdict v) {
    switch (v) {
        case eod::Verdict::Valid: return "valid";
        case eod::Verdict::ValidWith: return "valid_with";
        case eod::Verdict::NotValid: return "not_valid";
    }
    return "?";
}

double micros(std::chrono::nanoseconds d) { return static_cast<double>(d.count()) / 1000.0; }

json witness_json(const eod::ViolationPair& p) {
    return json{{"first", tuple_label(p.first)},
                {"second", tuple_label(p.second)},
                {"kind", std::string(eod::violation_kind_name(p.kind))}};
}

int cmd_validate(const CommonArgs& common, const StatementArgs& sargs) {
    const eod::Relation r = load(common);
    const eod::Statement stmt = build_statement(r, sargs);
    const eod::ValidationOutcome o = eod::validate_eod(r, stmt);

    if (common.output == "records") {
        json j;
        j["command"] = "validate";
        j["verdict"] = verdict_token(o.verdict);
        j["embedding"] = names_json(r, o.embedding.ids());
        j["witness"] = o.witness ? witness_json(*o.witness) : json(nullptr);
        j["s_count"] = o.diagnostics.swap_count;
        j["m_count"] = o.diagnostics.merge_count;
        j["ignored"] = o.diagnostics.ignored;
        j["iterations"] = o.diagnostics.iterations;
        j["elapsed_us"] = micros(o.diagnostics.elapsed);
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "statement: " << describe_statement(r, stmt) << '\n';
        std::cout << "verdict:   " << eod::verdict_name(o.verdict);
        if (o.verdict == eod::Verdict::ValidWith) std::cout << ' ' << names_of(r, o.embedding.ids());
        std::cout << '\n';
        if (o.witness) {
            std::cout << "witness:   " << eod::violation_kind_name(o.witness->kind) << " between "
                      << describe_tuple(r, stmt, o.witness->first) << " and "
                      << describe_tuple(r, stmt, o.witness->second) << '\n';
        }
        std::cout << "swaps |S|: " << o.diagnostics.swap_count << '\n';
        std::cout << "merges |M|: " << o.diagnostics.merge_count << '\n';
        std::cout << "ignored tuples: " << o.diagnostics.ignored << '\n';
        std::cout << "iterations: " << o.diagnostics.iterations << '\n';
        std::cout << "elapsed: " << std::fixed << std::setprecision(1) << micros(o.diagnostics.elapsed)
                  << " us\n";
    }
    return o.holds() ? kExitHolds : kExitNotValid;
}

int cmd_oracle(const CommonArgs& common, const StatementArgs& sargs, std::size_t cap) {
    const eod::Relation r = load(common);
    const eod::Statement stmt = build_statement(r, sargs);
    eod::OracleOptions opts;
    opts.cap = cap;

    // Run the exhaustive searches first so a cap refusal prints nothing else.
    const eod::ValidationOutcome naive = eod::naive_validate(r, stmt, opts);
    const auto optimum = eod::min_ignored_embedding(r, stmt, opts);
    const eod::ValidationOutcome heuristic = eod::validate_eod(r, stmt);
    const auto greedy = eod::greedy_min_ignored(r, stmt);

    struct Line {
        std::string algorithm;
        bool holds;
        std::optional<eod::Embedding> embedding;
        std::optional<std::size_t> ignored;
    };
    std::vector<Line> lines;
    lines.push_back({"validEOD", heuristic.holds(),
                     heuristic.holds() ? std::optional(heuristic.embedding) : std::nullopt,
                     heuristic.holds() ? std::optional(heuristic.diagnostics.ignored) : std::nullopt});
    lines.push_back({"naive", naive.holds(), naive.holds() ? std::optional(naive.embedding) : std::nullopt,
                     naive.holds() ? std::optional(naive.diagnostics.ignored) : std::nullopt});
    lines.push_back({"min_ignored", optimum.has_value(),
                     optimum ? std::optional(optimum->embedding) : std::nullopt,
                     optimum ? std::optional(optimum->ignored) : std::nullopt});
    lines.push_back({"greedy", greedy.has_value(), greedy ? std::optional(greedy->embedding) : std::nullopt,
                     greedy ? std::optional(greedy->ignored) : std::nullopt});

    auto gap = [&](const Line& l) -> std::optional<long long> {
        if (!l.ignored || !optimum) return std::nullopt;
        return static_cast<long long>(*l.ignored) - static_cast<long long>(optimum->ignored);
    };

    if (common.output == "records") {
        for (const auto& l : lines) {
            json j;
            j["algorithm"] = l.algorithm;
            j["holds"] = l.holds;
            j["embedding"] = l.embedding ? names_json(r, l.embedding->ids()) : json(nullptr);
            j["ignored"] = l.ignored ? json(*l.ignored) : json(nullptr);
            const auto g = gap(l);
            j["gap"] = g ? json(*g) : json(nullptr);
            std::cout << j.dump() << '\n';
        }
    } else {
        std::cout << "statement: " << describe_statement(r, stmt) << '\n';
        std::cout << std::left << std::setw(13) << "algorithm" << std::setw(7) << "holds" << std::setw(28)
                  << "embedding" << std::setw(9) << "ignored" << "gap\n";
        for (const auto& l : lines) {
            const auto g = gap(l);
            std::cout << std::setw(13) << l.algorithm << std::setw(7) << (l.holds ? "yes" : "no") << std::setw(28)
                      << (l.embedding ? names_of(r, l.embedding->ids()) : "-") << std::setw(9)
                      << (l.ignored ? std::to_string(*l.ignored) : "-") << (g ? std::to_string(*g) : "-") << '\n';
        }
    }
    return heuristic.holds() ? kExitHolds : kExitNotValid;
}

int cmd_inspect(const CommonArgs& common) {
    const eod::Relation r = load(common);
    const eod::MissingIndex idx = eod::build_missing_index(r);
    if (common.output == "records") {
        json attrs = json::array();
        for (eod::AttrId a = 0; a < r.num_attributes(); ++a) {
            attrs.push_back({{"name", r.attribute(a).name},
                             {"kind", std::string(eod::kind_name(r.attribute(a).kind))},
                             {"nulls", idx.missing(a).size()}});
        }
        json j;
        j["rows"] = r.num_rows();
        j["attributes"] = r.num_attributes();
        j["columns"] = attrs;
        j["total_nulls"] = idx.total_missing();
        j["attributes_with_nulls"] = names_json(r, idx.attributes_with_missing());
        std::cout << j.dump() << '\n';
        return kExitHolds;
    }
    std::cout << "rows: " << r.num_rows() << '\n';
    std::cout << "attributes: " << r.num_attributes() << '\n';
    for (eod::AttrId a = 0; a < r.num_attributes(); ++a) {
        std::cout << "  " << std::left << std::setw(20) << r.attribute(a).name << std::setw(8)
                  << eod::kind_name(r.attribute(a).kind) << "nulls " << idx.missing(a).size() << '\n';
    }
    std::cout << "total nulls: " << idx.total_missing() << '\n';
    std::cout << "attributes with nulls: " << names_of(r, idx.attributes_with_missing()) << '\n';
    return kExitHolds;
}

struct BenchArgs {
    std::string side = "lhs";
    std::string sizes = "1";
    std::size_t fixed = 1;
    std::size_t reps = 10;
    std::uint64_t seed = 1;
    std::string algorithm = "validEOD";
    double timeout_s = 60.0;
    std::string csv;
};

int cmd_bench(const CommonArgs& common, const StatementArgs& sargs, const BenchArgs& b) {
    eod::SweepConfig cfg;
    cfg.dataset = common.dataset;
    cfg.load = load_options(common);
    if (b.side == "lhs") {
        cfg.side = eod::Side::Lhs;
    } else if (b.side == "rhs") {
        cfg.side = eod::Side::Rhs;
    } else {
        throw UsageError("--side must be lhs or rhs");
    }
    cfg.sizes.clear();
    for (const auto& s : split_list(b.sizes)) {
        const std::string t = trim(s);
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
            throw UsageError("bad size '" + t + "'");
        }
        cfg.sizes.push_back(std::stoull(t));
    }
    cfg.fixed_size = b.fixed;
    cfg.repetitions = b.reps;
    cfg.seed = b.seed;
    if (b.algorithm == "validEOD") {
        cfg.algorithm = eod::Algorithm::ValidEod;
    } else if (b.algorithm == "naive") {
        cfg.algorithm = eod::Algorithm::Naive;
    } else if (b.algorithm == "both") {
        cfg.algorithm = eod::Algorithm::Both;
    } else {
        throw UsageError("--algorithm must be validEOD, naive or both");
    }
    cfg.op = parse_op(sargs.op);
    cfg.timeout = std::chrono::milliseconds(static_cast<long long>(b.timeout_s * 1000.0));

    const eod::Relation r = eod::load_relation_file(cfg.dataset, cfg.load);
    const eod::SweepResult result = eod::run_sweep(r, cfg);

    if (!b.csv.empty()) {
        std::ofstream out(b.csv);
        if (!out) throw eod::Error("cannot write '" + b.csv + "'");
        eod::write_rows_delimited(out, result.rows);
    }
    if (common.output == "records") {
        eod::write_rows_records(std::cout, result.rows);
        return kExitHolds;
    }
    std::cout << "dataset: " << cfg.dataset << " (" << r.num_rows() << " rows, " << r.num_attributes()
              << " attributes)\n";
    for (const auto& row : result.rows) {
        std::cout << "size " << row.size << " rep " << row.rep << ": " << names_of(r, row.lhs, "[", "]") << ' '
                  << eod::operator_symbol(cfg.op) << ' ' << names_of(r, row.rhs, "[", "]") << " -> "
                  << eod::verdict_name(row.verdict) << ", |S|=" << row.s_count << ", |M|=" << row.m_count
                  << ", ignored=" << row.ignored;
        if (row.time_valid_eod_us) std::cout << ", validEOD " << std::fixed << std::setprecision(1) << *row.time_valid_eod_us << " us";
        if (row.naive_timed_out) {
            std::cout << ", naive timeout";
        } else if (row.time_naive_us) {
            std::cout << ", naive " << std::fixed << std::setprecision(1) << *row.time_naive_us << " us";
        }
        std::cout << '\n';
    }
    std::cout << "\nsize  runs  mean validEOD us  mean naive us  timeouts  mean |S|  mean |M|\n";
    for (const auto& a : result.aggregates) {
        std::cout << std::left << std::setw(6) << a.size << std::setw(6) << a.runs << std::setw(18) << std::fixed
                  << std::setprecision(1) << a.mean_time_valid_eod_us << std::setw(15) << a.mean_time_naive_us
                  << std::setw(10) << a.naive_timeouts << std::setw(10) << std::setprecision(2) << a.mean_s
                  << a.mean_m << '\n';
    }
    return kExitHolds;
}

struct GenArgs {
    std::size_t rows = 1000;
    std::size_t attrs = 10;
    double null_rate = 0.1;
    std::size_t swaps = 0;
    std::size_t merges = 0;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_gen(const CommonArgs& common, const GenArgs& g) {
    eod::SyntheticConfig cfg;
    cfg.rows = g.rows;
    cfg.attributes = g.attrs;
    cfg.null_rate = g.null_rate;
    cfg.swap_pairs = g.swaps;
    cfg.merge_pairs = g.merges;
    cfg.seed = g.seed;
    const eod::SyntheticData data = eod::gen_synthetic(cfg);

    eod::WriteOptions wopts;
    wopts.delimiter = parse_delimiter(common.delimiter);
    wopts.header = !common.no_header;
    if (!common.null_tokens.empty()) wopts.null_token = common.null_tokens.front();
    if (g.out.empty() || g.out == "-") {
        eod::write_relation(std::cout, data.relation, wopts);
    } else {
        std::ofstream out(g.out, std::ios::binary);
        if (!out) throw eod::Error("cannot write '" + g.out + "'");
        eod::write_relation(out, data.relation, wopts);
    }
    return kExitHolds;
}

void add_common(CLI::App* cmd, CommonArgs& common, bool needs_dataset) {
    if (needs_dataset) cmd->add_option("dataset", common.dataset, "Delimited text file")->required();
    cmd->add_option("--null-token", common.null_tokens,
                    "Cell text treated as missing (repeatable; default from EOD_NULL_TOKENS or \"\",?,NULL,⊥)");
    cmd->add_option("--delimiter", common.delimiter, "Field delimiter (default ',', 'tab' for tabs)");
    cmd->add_flag("--no-header", common.no_header, "First record is data; attributes are named 1..k");
    cmd->add_option("--output", common.output, "human or records")->check(CLI::IsMember({"human", "records"}));
}

void add_statement(CLI::App* cmd, StatementArgs& s, bool required) {
    auto* lhs = cmd->add_option("--lhs", s.lhs, "Comma-separated LHS attributes");
    auto* rhs = cmd->add_option("--rhs", s.rhs, "Comma-separated RHS attributes");
    if (required) {
        lhs->required();
        rhs->required();
    }
    cmd->add_option("--embedding", s.embedding, "Comma-separated embedding (default lhs and rhs)");
    cmd->add_option("--op", s.op, "leq or lt (default leq)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Embedded order dependency validation"};
    app.require_subcommand(1);

    CommonArgs common;
    StatementArgs sargs;
    BenchArgs bench;
    GenArgs gen;
    std::size_t cap = 20;

    auto* validate = app.add_subcommand("validate", "Validate E: X -> Y and repair the embedding if needed");
    add_common(validate, common, true);
    add_statement(validate, sargs, true);

    auto* oracle = app.add_subcommand("oracle", "Compare validEOD against the exhaustive and greedy searches");
    add_common(oracle, common, true);
    add_statement(oracle, sargs, true);
    oracle->add_option("--cap", cap, "Maximum free attributes for exhaustive search (default 20)");

    auto* inspect = app.add_subcommand("inspect", "Summarize a dataset");
    add_common(inspect, common, true);

    auto* benchcmd = app.add_subcommand("bench", "LHS/RHS size sweep with random attribute draws");
    add_common(benchcmd, common, true);
    benchcmd->add_option("--op", sargs.op, "leq or lt (default leq)");
    benchcmd->add_option("--side", bench.side, "lhs or rhs");
    benchcmd->add_option("--sizes", bench.sizes, "Comma-separated sizes of the varied side");
    benchcmd->add_option("--fixed", bench.fixed, "Size of the other side (default 1)");
    benchcmd->add_option("--reps", bench.reps, "Repetitions per size (default 10)");
    benchcmd->add_option("--seed", bench.seed, "Random seed");
    benchcmd->add_option("--algorithm", bench.algorithm, "validEOD, naive or both");
    benchcmd->add_option("--timeout", bench.timeout_s, "Seconds per naive run (default 60)");
    benchcmd->add_option("--csv", bench.csv, "Also write rows as delimited text to this file");

    auto* gencmd = app.add_subcommand("gen", "Generate a synthetic relation with planted violations");
    add_common(gencmd, common, false);
    gencmd->add_option("--rows", gen.rows, "Tuple count");
    gencmd->add_option("--attrs", gen.attrs, "Attribute count");
    gencmd->add_option("--null-rate", gen.null_rate, "Null probability per cell outside A1, A2");
    gencmd->add_option("--swaps", gen.swaps, "Planted swap pairs");
    gencmd->add_option("--merges", gen.merges, "Planted merge pairs");
    gencmd->add_option("--seed", gen.seed, "Random seed");
    gencmd->add_option("--out", gen.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*validate) return cmd_validate(common, sargs);
        if (*oracle) return cmd_oracle(common, sargs, cap);
        if (*inspect) return cmd_inspect(common);
        if (*benchcmd) return cmd_bench(common, sargs, bench);
        if (*gencmd) return cmd_gen(common, gen);
    } catch (const eod::CapExceeded& e) {
        std::cerr << "eodv: refused: " << e.what() << '\n';
        return kExitCap;
    } catch (const UsageError& e) {
        std::cerr << "eodv: " << e.what() << '\n';
        return kExitUsage;
    } catch (const eod::Error& e) {
        std::cerr << "eodv: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
