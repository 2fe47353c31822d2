// kron: Kronecker coefficients, dilations, symbolic chambers and Hilbert series.
//
// Exit codes: 0 success, 2 invalid input, 3 resource cap, 1 anything else.

#include "kron/oracle.hpp"
#include "kron/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <iterator>
#include <thread>

using json = nlohmann::json;
using namespace kron;

namespace {

constexpr int exit_input = 2;
constexpr int exit_cap = 3;

struct Job {
    std::string command;
    std::string tuple_text;
    std::string format = "pretty";
    std::string cache_dir;
    std::string sigma;
    std::string cache_action;
    uint64_t seed = 0x5eed'c0ffee;
    int threads = 0;
    long max_terms = 0;
    int content_cap = 10;
    bool from_stdin = false;
};

DiagramTuple read_tuple(const Job& job)
{
    if (!job.from_stdin) {
        if (job.tuple_text.empty()) throw input_error("missing diagram tuple");
        return parse_tuple(job.tuple_text);
    }
    std::string body((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    json j;
    try {
        j = json::parse(body);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("stdin is not valid JSON: ") + e.what());
    }
    const json& d = j.is_object() ? j.at("diagrams") : j;
    if (!d.is_array()) throw input_error("expected an array of diagrams");
    DiagramTuple t;
    try {
        for (auto& row : d) t.push_back(row.get<Diagram>());
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed diagram list: ") + e.what());
    }
    return t;
}

PipelineOptions pipeline_options(const Job& job)
{
    PipelineOptions o;
    if (!job.cache_dir.empty()) o.cache_dir = job.cache_dir;
    o.seed = job.seed;
    o.threads = job.threads;
    o.max_terms = job.max_terms;
    if (job.sigma == "rect") o.sigma = SigmaKind::rect;
    if (job.sigma == "general") o.sigma = SigmaKind::general;
    return o;
}

json diagnostics(const KronResult& r)
{
    json d;
    if (!r.normalized.shortcut.empty()) d["shortcut"] = r.normalized.shortcut;
    if (!r.dims.empty()) {
        d["dims"] = r.dims;
        d["sigma"] = r.sigma == SigmaKind::rect ? "rect" : "general";
    }
    d["cosets"] = r.stats.cosets;
    d["pairs"] = r.stats.pairs;
    d["residues"] = r.stats.residues;
    d["seconds"] = r.stats.seconds;
    return d;
}

json rvec_json(const RVec& v)
{
    json a = json::array();
    for (auto& x : v) a.push_back(x.get_str());
    return a;
}

int emit(const Job& job, const DiagramTuple& t, const json& result, const std::string& pretty, json diag = nullptr)
{
    if (job.format == "json") {
        json out;
        out["command"] = job.command;
        out["input"] = print_tuple(t);
        out["result"] = result;
        if (!diag.is_null()) out["diagnostics"] = std::move(diag);
        std::cout << out.dump() << '\n';
    } else {
        std::cout << pretty << '\n';
    }
    return 0;
}

int run_cache(const Job& job)
{
    std::string dir = job.cache_dir.empty() ? default_cache_dir() : job.cache_dir;
    if (job.cache_action == "clear") {
        int n = cache_clear(dir);
        std::cerr << "removed " << n << " entries from " << dir << '\n';
        return 0;
    }
    bool verify = job.cache_action == "verify";
    auto entries = verify ? cache_verify(dir) : cache_list(dir);
    json arr = json::array();
    int flagged = 0;
    for (auto& e : entries) {
        if (verify && e.valid) continue;
        flagged += !e.valid;
        arr.push_back({{"file", e.file}, {"valid", e.valid}, {"message", e.message}});
        if (job.format != "json") std::cout << e.file << (e.valid ? "  " : "  INVALID ") << e.message << '\n';
    }
    if (job.format == "json") std::cout << json{{"command", "cache " + job.cache_action}, {"entries", arr}}.dump() << '\n';
    if (verify) std::cerr << entries.size() << " entries checked, " << flagged << " flagged\n";
    return 0;
}

int run(const Job& job)
{
    if (job.command == "cache") return run_cache(job);
    DiagramTuple t = read_tuple(job);
    auto opt = pipeline_options(job);

    if (job.command == "eval") {
        auto r = kronecker_number(t, opt);
        return emit(job, t, r.number.get_str(), r.number.get_str(), diagnostics(r));
    }
    if (job.command == "dilate") {
        auto r = kronecker_dilated(t, opt);
        return emit(job, t, json::parse(r.value.to_json()), r.value.pretty(), diagnostics(r));
    }
    if (job.command == "symbolic") {
        auto r = kronecker_symbolic(t, opt);
        json diag = diagnostics(r);
        diag["validity"] = {{"lambda1", rvec_json(r.lambda1)}, {"mu1", rvec_json(r.mu1)}, {"signs", r.signs}};
        std::string pretty = r.value.pretty();
        if (!r.signs.empty()) pretty += "\nvalid on the tope of lambda=" + rvec_json(r.lambda1).dump() + " mu=" + rvec_json(r.mu1).dump();
        return emit(job, t, json::parse(r.value.to_json()), pretty, diag);
    }
    if (job.command == "hilbert") {
        auto h = hilbert_series(t, opt);
        return emit(job, t, json::parse(h.to_json()), h.pretty());
    }
    if (job.command == "saturation") {
        auto r = kronecker_dilated(t, opt);
        auto k = saturation_factor(r.value);
        return emit(job, t, k ? json(*k) : json(nullptr), k ? std::to_string(*k) : "none", diagnostics(r));
    }
    if (job.command == "oracle") {
        Int o = kronecker_bruteforce(t, job.content_cap);
        Int p = kronecker_number(t, opt).number;
        json res{{"oracle", o.get_str()}, {"pipeline", p.get_str()}, {"agree", o == p}};
        emit(job, t, res, "oracle " + o.get_str() + "\npipeline " + p.get_str() + (o == p ? "\nagree" : "\nDISAGREE"));
        return o == p ? 0 : 1;
    }
    throw input_error("unknown command " + job.command);
}

}  // namespace

int main(int argc, char** argv)
{
    Job job;
    CLI::App app{"Kronecker coefficients via branching to a Levi subgroup and iterated residues"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    auto add_common = [&](CLI::App* sub, bool needs_tuple) {
        if (needs_tuple) {
            sub->add_option("tuple", job.tuple_text, "diagrams, e.g. \"[2,1] [2,1] [3]\"");
            sub->add_flag("--stdin", job.from_stdin, "read {\"diagrams\": [[...], ...]} from standard input");
        }
        sub->add_option("--format", job.format, "output format")->check(CLI::IsMember({"json", "pretty"}));
        sub->add_option("--cache-dir", job.cache_dir, "root data cache (default $KRON_CACHE_DIR or .kron-cache)");
        sub->add_option("--seed", job.seed, "seed of the deformation sampler");
        sub->add_option("--threads", job.threads, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
        sub->add_option("--max-terms", job.max_terms, "refuse after this many residues, 0 = no cap")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--sigma", job.sigma, "override the Levi choice")->check(CLI::IsMember({"general", "rect"}));
    };
    struct Cmd {
        const char* name;
        const char* help;
    };
    for (auto [name, help] : {Cmd{"eval", "Kronecker coefficient of the tuple"},
                              Cmd{"dilate", "quasi-polynomial k -> g(k tuple)"},
                              Cmd{"symbolic", "quasi-polynomial in the rows on the tope of the tuple"},
                              Cmd{"hilbert", "Hilbert series of a rectangular tuple"},
                              Cmd{"saturation", "smallest k >= 1 with g(k tuple) > 0"},
                              Cmd{"oracle", "compare with the brute-force reference"}}) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub, true);
        if (std::string(name) == "oracle") sub->add_option("--content-cap", job.content_cap, "largest content accepted");
        sub->callback([&job, n = std::string(name)] { job.command = n; });
    }
    auto* cache = app.add_subcommand("cache", "inspect the root data cache");
    add_common(cache, false);
    cache->add_option("action", job.cache_action)->required()->check(CLI::IsMember({"list", "clear", "verify"}));
    cache->callback([&] { job.command = "cache"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }

    try {
        return run(job);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return exit_input;
    } catch (const cap_exceeded& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return exit_cap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
