#include "cmsr/cli.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cmsr/bounds.hpp"
#include "cmsr/cluster.hpp"
#include "cmsr/io.hpp"
#include "cmsr/rng.hpp"

namespace cmsr {

namespace {

namespace fs = std::filesystem;

std::string shard_filename(int node) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "shard_%04d.cmsr", node + 1);
    return buf;
}

// "1,2,5" (1-based) -> {0,1,4}
std::vector<int> parse_id_list(const std::string& text, int n, const char* what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != item.size() || v < 1 || v > n)
            throw std::runtime_error(std::string(what) + " list: '" + item +
                                     "' is not a node id in 1.." + std::to_string(n));
        out.push_back(int(v - 1));
    }
    if (out.empty()) throw std::runtime_error(std::string(what) + " list is empty");
    return out;
}

std::string id_list(const std::vector<int>& nodes) {
    std::string s;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(nodes[i] + 1);
    }
    return s;
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::vector<Symbol> read_message_file(const fs::path& path, const CodeParams& p) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path.string() + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = std::move(buf).str();

    const int sym_bytes = shard_symbol_bytes(p);
    const std::size_t want = std::size_t(p.k) * std::size_t(p.l) * std::size_t(sym_bytes);
    if (bytes.size() != want)
        throw std::runtime_error(path.string() + ": message must be exactly k*l*" +
                                 std::to_string(sym_bytes) + " = " + std::to_string(want) +
                                 " bytes, got " + std::to_string(bytes.size()));
    std::vector<Symbol> msg(std::size_t(p.k) * std::size_t(p.l));
    for (std::size_t i = 0; i < msg.size(); ++i) {
        Symbol v = Symbol(std::uint8_t(bytes[i * std::size_t(sym_bytes)]));
        if (sym_bytes == 2)
            v |= Symbol(std::uint16_t(std::uint8_t(bytes[i * std::size_t(sym_bytes) + 1])) << 8);
        if (std::uint32_t(v) >= p.field.order())
            throw std::runtime_error(path.string() + ": symbol value " + std::to_string(v) +
                                     " outside GF(2^" + std::to_string(p.field.width()) + ")");
        msg[i] = v;
    }
    return msg;
}

// Loads every shard_*.cmsr in the directory into per-node slots.
std::vector<std::optional<NodeVector>> load_shard_dir(const fs::path& dir, const CodeParams& p) {
    if (!fs::is_directory(dir)) throw std::runtime_error(dir.string() + ": not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.starts_with("shard_") && name.ends_with(".cmsr")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<std::optional<NodeVector>> slots(std::size_t(p.n));
    for (const auto& f : files) {
        ShardData shard = read_shard(f, p);
        if (slots[std::size_t(shard.node)])
            throw std::runtime_error(f.string() + ": duplicate shard for node " +
                                     std::to_string(shard.node + 1));
        slots[std::size_t(shard.node)] = std::move(shard.content);
    }
    return slots;
}

struct GenArgs {
    int n = 0, k = 0, h = 0, d = 0;
    std::optional<std::uint64_t> seed;
    std::optional<int> width;
    std::int64_t guard = kDefaultSymbolGuard;
    std::string out_path;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
    CodeParams p = make_params(a.n, a.k, a.h, a.d, a.width, a.seed, a.guard);
    write_params_file(a.out_path, p);
    out << "wrote " << a.out_path << "\n";
    out << "n=" << p.n << " k=" << p.k << " h=" << p.h << " d=" << p.d << " s=" << p.s
        << " m=" << p.m << " l=" << p.l << " field=GF(2^" << p.field.width() << ")"
        << " lambda=" << (p.lambda_seed ? "seed:" + std::to_string(*p.lambda_seed) : "canonical")
        << "\n";
    if (p.h == 1)
        out << "note: h=1 is an extension; the design range is h >= 2 and round 2 is empty\n";
    return 0;
}

struct EncodeArgs {
    std::string params_path, in_path, out_dir;
    std::int64_t guard = kDefaultSymbolGuard;
};

int cmd_encode(const EncodeArgs& a, std::ostream& out) {
    CodeParams p = read_params_file(a.params_path, a.guard);
    std::vector<Symbol> msg = read_message_file(a.in_path, p);
    Codeword w = encode(p, msg);
    fs::create_directories(a.out_dir);
    for (int i = 0; i < p.n; ++i)
        write_shard(fs::path(a.out_dir) / shard_filename(i), p, i, w.nodes[std::size_t(i)]);
    out << "wrote " << p.n << " shards to " << a.out_dir << "\n";
    return 0;
}

struct VerifyArgs {
    std::string params_path, shards_dir;
    std::int64_t guard = kDefaultSymbolGuard;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    CodeParams p = read_params_file(a.params_path, a.guard);
    auto slots = load_shard_dir(a.shards_dir, p);
    int live = 0;
    for (const auto& s : slots)
        if (s) ++live;
    out << "shards present: " << live << "/" << p.n << "\n";

    Cluster cluster(p, std::move(slots));
    const bool ok = cluster.verify();
    if (live == p.n)
        out << "parity residual: " << (ok ? "zero" : "NONZERO") << "\n";
    else
        out << "consistency against decode of first k: " << (ok ? "pass" : "FAIL") << "\n";
    out << "#CHECK verify live=" << live << " n=" << p.n << " ok=" << (ok ? "yes" : "no") << "\n";
    return ok ? 0 : 1;
}

struct RepairArgs {
    std::string params_path, shards_dir, failed_csv, helpers_csv, report_path;
    bool naive = false;
    std::int64_t guard = kDefaultSymbolGuard;
};

int cmd_repair(const RepairArgs& a, std::ostream& out) {
    CodeParams p = read_params_file(a.params_path, a.guard);
    auto slots = load_shard_dir(a.shards_dir, p);

    const std::vector<int> failed = parse_id_list(a.failed_csv, p.n, "--failed");
    for (int f : failed) slots[std::size_t(f)].reset();

    Cluster cluster(p, std::move(slots));
    if (!cluster.verify())
        throw std::runtime_error("surviving shards are inconsistent; refusing to repair");

    BoundReport report;
    std::vector<int> helpers;
    if (a.naive) {
        report = cluster.run_naive_repair(failed);
    } else {
        if (a.helpers_csv.empty())
            throw std::runtime_error("cooperative repair needs --helpers (or pass --naive)");
        helpers = parse_id_list(a.helpers_csv, p.n, "--helpers");
        report = cluster.run_cooperative_repair(failed, helpers);
    }

    for (int f : failed)
        write_shard(fs::path(a.shards_dir) / shard_filename(f), p, f, cluster.shard(f));

    const bool verified = cluster.verify();
    std::ostringstream text;
    for (const auto& line : cluster.event_log()) text << line << "\n";
    text << bound_report_text(report);
    text << "#CHECK repair mode=" << (a.naive ? "naive" : "cooperative")
         << " failed=" << id_list(failed);
    if (!a.naive) text << " helpers=" << id_list(helpers);
    text << " round1=" << report.round1_total << " round2=" << report.round2_total
         << " total=" << report.total << " co_bound=" << report.co_bound.str()
         << " co_met=" << (report.co_met ? "yes" : "no") << " ce_bound=" << report.ce_bound.str()
         << " ce_met=" << (report.ce_met ? "yes" : "no")
         << " verify=" << (verified ? "pass" : "fail") << "\n";

    out << text.str();
    if (!a.report_path.empty()) {
        const std::string tmp = a.report_path + ".tmp";
        {
            std::ofstream rep(tmp, std::ios::trunc);
            if (!rep) throw std::runtime_error(tmp + ": cannot open for writing");
            rep << text.str();
        }
        fs::rename(tmp, a.report_path);
    }
    return verified ? 0 : 1;
}

struct BoundsArgs {
    int n = 0, k = 0, h = 0, d = 0;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
    validate_code_parameters(a.n, a.k, a.h, a.d);
    const int s = a.d + 1 - a.k;
    const int m = a.d + a.h - a.k;
    __int128 plane = 1;
    for (int i = 0; i < a.n; ++i) {
        plane *= s;
        if (plane > (__int128(1) << 62))
            throw std::runtime_error("s^n too large for exact bandwidth accounting");
    }
    const std::int64_t l = std::int64_t(plane) * m;

    const Ratio co = cutset_cooperative(a.k, l, a.h, a.d);
    const Ratio ce = cutset_centralized(a.k, l, a.h, a.d);
    const std::int64_t naive = std::int64_t(a.h) * a.k * l;
    const NodeSizeTable nst = node_size_table(a.n, a.k, a.h, a.d);

    out << "parameters n=" << a.n << " k=" << a.k << " h=" << a.h << " d=" << a.d << " (s=" << s
        << ", m=" << m << ", l=" << l << ")\n";
    if (a.h == 1)
        out << "note: h=1 is an extension; the design range is h >= 2 and round 2 is empty\n";
    out << "repair bandwidth for h failures from d helpers (symbols)\n";
    out << "  cooperative cut-set : " << co.str() << (co.integral() ? "" : "  (non-integral)")
        << "\n";
    out << "  centralized cut-set : " << ce.str() << (ce.integral() ? "" : "  (non-integral)")
        << "\n";
    out << "  naive h*k*l         : " << naive << "\n";
    out << "node size comparison (log2 of symbols per node)\n";
    out << "  lcm-power centralized construction : " << fixed6(nst.lcm_power_log2) << "\n";
    out << "  iterated-transform construction    : "
        << (nst.transform_defined ? fixed6(nst.transform_iterated_log2) : "n/a (needs d > k)")
        << "\n";
    out << "  plane-replicated (this library)    : " << fixed6(nst.plane_replicated_log2) << "\n";
    out << "#CHECK bounds n=" << a.n << " k=" << a.k << " h=" << a.h << " d=" << a.d << " s=" << s
        << " m=" << m << " l=" << l << " co=" << co.str() << " ce=" << ce.str()
        << " naive=" << naive << " lcm_log2=" << fixed6(nst.lcm_power_log2) << " transform_log2="
        << (nst.transform_defined ? fixed6(nst.transform_iterated_log2) : "na")
        << " plane_log2=" << fixed6(nst.plane_replicated_log2) << "\n";
    return 0;
}

struct BenchArgs {
    std::string params_path;
    int trials = 10;
    std::uint64_t seed = 1;
    std::int64_t guard = kDefaultSymbolGuard;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    CodeParams p = a.params_path.empty() ? make_params(6, 3, 2, 4)
                                         : read_params_file(a.params_path, a.guard);
    out << "bench n=" << p.n << " k=" << p.k << " h=" << p.h << " d=" << p.d
        << " trials=" << a.trials << " seed=" << a.seed << "\n";

    Rng rng(a.seed);
    int failures = 0;
    for (int trial = 1; trial <= a.trials; ++trial) {
        std::vector<Symbol> msg(std::size_t(p.k) * std::size_t(p.l));
        for (auto& v : msg) v = Symbol(rng.below(p.field.order()));

        std::vector<int> ids(std::size_t(p.n));
        for (int i = 0; i < p.n; ++i) ids[std::size_t(i)] = i;
        rng.shuffle(ids);
        std::vector<int> failed(ids.begin(), ids.begin() + p.h);
        std::vector<int> rest(ids.begin() + p.h, ids.end());
        rng.shuffle(rest);
        std::vector<int> helpers(rest.begin(), rest.begin() + p.d);
        std::sort(failed.begin(), failed.end());
        std::sort(helpers.begin(), helpers.end());

        Cluster cluster(p, msg);
        cluster.fail_nodes(failed);
        const BoundReport rep = cluster.run_cooperative_repair(failed, helpers);
        bool exact = true;
        for (int f : failed)
            if (cluster.shard(f) != cluster.oracle_node(f)) exact = false;

        const bool ok = exact && rep.co_met && rep.ce_met;
        if (!ok) ++failures;
        out << "#CHECK trial=" << trial << " failed=" << id_list(failed)
            << " helpers=" << id_list(helpers) << " round1=" << rep.round1_total
            << " round2=" << rep.round2_total << " total=" << rep.total
            << " co_met=" << (rep.co_met ? "yes" : "no")
            << " ce_met=" << (rep.ce_met ? "yes" : "no") << " exact=" << (exact ? "yes" : "no")
            << "\n";
    }
    out << "#CHECK bench trials=" << a.trials << " seed=" << a.seed << " failures=" << failures
        << " all_ok=" << (failures == 0 ? "yes" : "no") << "\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int cli_dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"cooperative MSR array codes: encode, repair, meter, verify"};
    app.name("cmsr");
    app.require_subcommand(1);
    // --h is a code parameter, so only the long help spelling exists.
    app.set_help_flag("--help", "print help and exit");

    GenArgs gen;
    auto* sub_gen = app.add_subcommand("gen", "generate a params file");
    sub_gen->set_help_flag("--help", "print help and exit");
    sub_gen->add_option("--n", gen.n, "code length (nodes)")->required();
    sub_gen->add_option("--k", gen.k, "code dimension")->required();
    sub_gen->add_option("--h", gen.h, "failures the repair scheme targets")->required();
    sub_gen->add_option("--d", gen.d, "helper count")->required();
    std::uint64_t gen_seed = 0;
    auto* gen_seed_opt =
        sub_gen->add_option("--seed", gen_seed, "shuffle evaluation points with this seed");
    int gen_width = 0;
    auto* gen_width_opt = sub_gen->add_option("--width", gen_width, "field width (4, 8, or 16)");
    sub_gen->add_option("--guard", gen.guard, "symbol budget guard (default 2^26)");
    sub_gen->add_option("--out", gen.out_path, "output params file")->required();

    EncodeArgs enc;
    auto* sub_enc = app.add_subcommand("encode", "encode a message into n shard files");
    sub_enc->set_help_flag("--help", "print help and exit");
    sub_enc->add_option("--params", enc.params_path, "params file")->required();
    sub_enc->add_option("--in", enc.in_path, "message file (raw k*l symbols, LE)")->required();
    sub_enc->add_option("--out-dir", enc.out_dir, "shard output directory")->required();
    sub_enc->add_option("--guard", enc.guard, "symbol budget guard");

    VerifyArgs ver;
    auto* sub_ver = app.add_subcommand("verify", "check shard consistency");
    sub_ver->set_help_flag("--help", "print help and exit");
    sub_ver->add_option("--params", ver.params_path, "params file")->required();
    sub_ver->add_option("--shards", ver.shards_dir, "shard directory")->required();
    sub_ver->add_option("--guard", ver.guard, "symbol budget guard");

    RepairArgs rep;
    auto* sub_rep = app.add_subcommand("repair", "repair failed nodes and rewrite their shards");
    sub_rep->set_help_flag("--help", "print help and exit");
    sub_rep->add_option("--params", rep.params_path, "params file")->required();
    sub_rep->add_option("--shards", rep.shards_dir, "shard directory")->required();
    sub_rep->add_option("--failed", rep.failed_csv, "failed node ids, 1-based, comma-separated")
        ->required();
    sub_rep->add_option("--helpers", rep.helpers_csv, "helper node ids, 1-based, comma-separated");
    sub_rep->add_flag("--naive", rep.naive, "download k full nodes per failure instead");
    sub_rep->add_option("--report", rep.report_path, "also write the report to this file");
    sub_rep->add_option("--guard", rep.guard, "symbol budget guard");

    BoundsArgs bnd;
    auto* sub_bnd = app.add_subcommand("bounds", "cut-set bounds and node-size comparison");
    sub_bnd->set_help_flag("--help", "print help and exit");
    sub_bnd->add_option("--n", bnd.n, "code length")->required();
    sub_bnd->add_option("--k", bnd.k, "code dimension")->required();
    sub_bnd->add_option("--h", bnd.h, "failure count")->required();
    sub_bnd->add_option("--d", bnd.d, "helper count")->required();

    BenchArgs ben;
    auto* sub_ben = app.add_subcommand("bench", "randomized repair trials with assertions");
    sub_ben->set_help_flag("--help", "print help and exit");
    sub_ben->add_option("--params", ben.params_path, "params file (default: n=6 k=3 h=2 d=4)");
    sub_ben->add_option("--trials", ben.trials, "trial count");
    sub_ben->add_option("--seed", ben.seed, "trial seed");
    sub_ben->add_option("--guard", ben.guard, "symbol budget guard");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*sub_gen) {
            if (*gen_seed_opt) gen.seed = gen_seed;
            if (*gen_width_opt) gen.width = gen_width;
            return cmd_gen(gen, out);
        }
        if (*sub_enc) return cmd_encode(enc, out);
        if (*sub_ver) return cmd_verify(ver, out);
        if (*sub_rep) return cmd_repair(rep, out);
        if (*sub_bnd) return cmd_bounds(bnd, out);
        if (*sub_ben) return cmd_bench(ben, out);
        err << "error: no subcommand selected\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace cmsr
