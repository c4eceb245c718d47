// qlogic: command-line front end for the logic, realization, protocol and
// randomness components.
//
// Output contract: results go to stdout as JSON (stable field order, LF
// endings) and are byte-identical for identical argument vectors, seed
// included. Diagnostics go to stderr. Exit codes: 0 success, 1 analysis
// failure (well-formed input whose analysis has no result to print,
// e.g. a partition of a logic with no states), 2 usage or validation error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlogic/bitstream.hpp"
#include "qlogic/catalog.hpp"
#include "qlogic/lattice.hpp"
#include "qlogic/logic_json.hpp"
#include "qlogic/ortho_logic.hpp"
#include "qlogic/partition_logic.hpp"
#include "qlogic/protocols.hpp"
#include "qlogic/quantum.hpp"
#include "qlogic/ray.hpp"
#include "qlogic/realization_search.hpp"
#include "qlogic/rng.hpp"

using nlohmann::json;

namespace {

// A well-formed request whose analysis ends with nothing to report.
struct analysis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr double kPi = 3.14159265358979323846;

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed) {
    if (!seed)
        throw CLI::ValidationError(
            "--seed", "a seed is required for stochastic runs");
    return *seed;
}

qlogic::EveStrategy parse_eve(const std::string& s) {
    if (s == "none") return qlogic::EveStrategy::none();
    if (s == "intercept-random")
        return qlogic::EveStrategy::intercept_random();
    if (s == "omniscient") return qlogic::EveStrategy::omniscient();
    const std::string fixed = "intercept-fixed:";
    if (s.rfind(fixed, 0) == 0) {
        const std::string num = s.substr(fixed.size());
        try {
            return qlogic::EveStrategy::intercept_fixed(std::stoi(num));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--eve", "bad basis in '" + s + "'");
        }
    }
    throw CLI::ValidationError(
        "--eve", "unknown strategy '" + s +
                     "' (none, intercept-random, intercept-fixed:K, omniscient)");
}

std::string eve_name(const qlogic::EveStrategy& e) {
    switch (e.kind) {
    case qlogic::EveKind::None: return "none";
    case qlogic::EveKind::InterceptResendRandomBasis: return "intercept-random";
    case qlogic::EveKind::InterceptResendFixedBasis:
        return "intercept-fixed:" + std::to_string(e.fixed_basis);
    case qlogic::EveKind::OmniscientClassical: return "omniscient";
    }
    return "?";
}

json key_head(const std::vector<int>& key, std::size_t n = 32) {
    json arr = json::array();
    for (std::size_t i = 0; i < key.size() && i < n; ++i) arr.push_back(key[i]);
    return arr;
}

json session_json(const std::string& protocol, const qlogic::SessionStats& st,
                  const qlogic::EveStrategy& eve) {
    json j;
    j["protocol"] = protocol;
    j["rounds"] = st.rounds;
    j["sifted"] = st.sifted;
    j["sift_rate"] = st.sift_rate;
    j["compared"] = st.compared;
    j["mismatches"] = st.mismatches;
    j["qber"] = st.qber;
    j["eve"] = eve_name(eve);
    if (st.eve_agreement)
        j["eve_agreement"] = *st.eve_agreement;
    else
        j["eve_agreement"] = nullptr;
    j["key_length"] = st.alice_key.size();
    j["keys_match"] = st.alice_key == st.bob_key;
    j["alice_key_head"] = key_head(st.alice_key);
    j["bob_key_head"] = key_head(st.bob_key);
    return j;
}

json chsh_json(const std::string& protocol, const qlogic::ChshStats& st) {
    json j;
    j["protocol"] = protocol;
    j["mode"] = st.exact ? "exact" : "sampled";
    j["rounds"] = st.rounds;
    j["correlations"] = st.correlations;
    j["rounds_per_pair"] = st.rounds_per_pair;
    j["s_value"] = st.s_value;
    j["s_abs"] = std::abs(st.s_value);
    return j;
}

void write_transcript(const std::string& path,
                      const qlogic::Transcript& rows) {
    std::ofstream out(path);
    if (!out)
        throw CLI::ValidationError("--transcript",
                                   "cannot open '" + path + "' for writing");
    out << "round,alice_basis,sent,bob_basis,outcome,kept,symbol_a,symbol_b\n";
    for (const auto& r : rows)
        out << r.round << ',' << r.alice_basis << ',' << r.sent << ','
            << r.bob_basis << ',' << r.outcome << ',' << (r.kept ? 1 : 0)
            << ',' << r.symbol_a << ',' << r.symbol_b << "\n";
}

std::vector<int> parse_id_list(const std::string& csv, const char* opt) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw CLI::ValidationError(opt, "bad id '" + tok + "'");
        }
    }
    if (out.empty()) throw CLI::ValidationError(opt, "empty id list");
    return out;
}

std::vector<double> parse_angles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--angles", "bad angle '" + tok + "'");
        }
    }
    if (out.size() != 4)
        throw CLI::ValidationError("--angles",
                                   "exactly four angles required (a,a',b,b')");
    return out;
}

// ---------------------------------------------------------------------------
// logic subcommands

void run_logic_states(const std::string& src) {
    const auto bundle = qlogic::resolve_logic_source(src);
    const auto states = qlogic::enumerate_two_valued_states(bundle.logic);
    const auto summary = qlogic::classify_state_set(bundle.logic, states);
    json j;
    j["source"] = src;
    j["atoms"] = bundle.logic.atom_count();
    j["contexts"] = bundle.logic.context_count();
    j["state_count"] = summary.state_count;
    j["unital"] = summary.unital;
    j["separating"] = summary.separating;
    json arr = json::array();
    for (const auto& s : states) arr.push_back(s.true_atoms());
    j["states"] = arr;
    print_json(j);
}

void run_logic_partition(const std::string& src) {
    const auto bundle = qlogic::resolve_logic_source(src);
    const auto states = qlogic::enumerate_two_valued_states(bundle.logic);
    if (states.empty())
        throw analysis_error("'" + src +
                             "' admits no two-valued states; there is no "
                             "partition logic to print");
    qlogic::PartitionLogic pl;
    try {
        pl = qlogic::build_partition_logic(bundle.logic, states);
    } catch (const std::invalid_argument& e) {
        throw analysis_error(e.what());
    }
    json j;
    j["source"] = src;
    j["state_count"] = pl.state_count;
    j["partitions"] = pl.blocks;
    j["block_atoms"] = pl.block_atom;
    print_json(j);
}

void run_logic_balls(const std::string& src) {
    const auto bundle = qlogic::resolve_logic_source(src);
    const auto states = qlogic::enumerate_two_valued_states(bundle.logic);
    if (states.empty())
        throw analysis_error("'" + src +
                             "' admits no two-valued states; there are no "
                             "ball types to print");
    qlogic::PartitionLogic pl;
    try {
        pl = qlogic::build_partition_logic(bundle.logic, states);
    } catch (const std::invalid_argument& e) {
        throw analysis_error(e.what());
    }
    const auto balls = qlogic::ball_types(pl);
    json j;
    j["source"] = src;
    j["state_count"] = pl.state_count;
    json syms = json::array(), labels = json::array();
    for (const auto& b : balls) {
        syms.push_back(b.symbols);
        labels.push_back(b.to_string());
    }
    j["balls"] = syms;
    j["labels"] = labels;
    print_json(j);
}

void run_logic_export(const std::string& src) {
    const auto bundle = qlogic::resolve_logic_source(src);
    print_json(qlogic::logic_to_json(bundle.logic, bundle.rays));
}

// ---------------------------------------------------------------------------
// ks verify

void run_ks_verify(const std::string& src,
                   const std::optional<std::string>& parity_subset) {
    const auto bundle = qlogic::resolve_logic_source(src);
    const auto states = qlogic::enumerate_two_valued_states(bundle.logic);
    json j;
    j["source"] = src;
    j["atoms"] = bundle.logic.atom_count();
    j["contexts"] = bundle.logic.context_count();
    j["state_count"] = states.size();
    j["colorable"] = !states.empty();
    if (parity_subset) {
        const auto subset = parse_id_list(*parity_subset, "--parity-subset");
        j["parity_subset"] = subset;
        j["parity_obstruction"] =
            qlogic::parity_obstruction(bundle.logic, subset);
    } else {
        j["parity_subset"] = nullptr;
        j["parity_obstruction"] = nullptr;
    }
    print_json(j);
}

// ---------------------------------------------------------------------------
// realize search

void run_realize_search(const std::string& src, int dim, int restarts,
                        std::uint64_t seed, int threads) {
    const auto bundle = qlogic::resolve_logic_source(src);
    qlogic::RealizationSearchOptions opt;
    opt.threads = threads;
    const auto res =
        qlogic::search_realization(bundle.logic, dim, restarts, seed, opt);
    json j;
    j["source"] = src;
    j["dim"] = dim;
    j["restarts"] = restarts;
    j["seed"] = seed;
    j["found"] = res.found;
    j["residual"] = res.residual;
    j["min_pair_angle_deg"] = res.min_pair_angle_deg;
    j["restart_index"] = res.restart_index;
    j["vectors"] = res.vectors;
    print_json(j);
}

// ---------------------------------------------------------------------------
// protocol run

struct ProtocolArgs {
    std::string name;
    std::uint64_t rounds = 0;
    std::optional<std::uint64_t> seed;
    std::string eve = "none";
    std::string transcript;
    double reveal = 0.1;
    bool exact = false;
    std::string angles = "0,90,45,135";
    int threads = 1;
};

void run_protocol(const ProtocolArgs& a) {
    if (a.exact && a.name != "ekert-c" && a.name != "ekert-q")
        throw CLI::ValidationError(
            "--exact", "exact-expectation mode exists only for ekert-c and "
                       "ekert-q");
    const qlogic::EveStrategy eve = parse_eve(a.eve);
    qlogic::Transcript transcript;
    qlogic::Transcript* sink = a.transcript.empty() ? nullptr : &transcript;

    json out;
    if (a.name == "bb84-choc") {
        const auto urn = qlogic::UrnModel::uniform(qlogic::ball_types(
            qlogic::build_partition_logic(qlogic::catalog("L_AB").logic)));
        const auto st = qlogic::run_bb84_chocolate(
            urn, a.rounds, eve, qlogic::RandomSource(require_seed(a.seed)),
            sink, a.threads);
        out = session_json(a.name, st, eve);
    } else if (a.name == "bb84-q") {
        const auto st = qlogic::run_bb84_quantum(
            a.rounds, eve, qlogic::RandomSource(require_seed(a.seed)), sink,
            a.threads);
        out = session_json(a.name, st, eve);
    } else if (a.name == "ks") {
        const auto cfg = qlogic::KSProtocolConfig::cabello_default(a.reveal, eve);
        const auto st = qlogic::run_ks_protocol(
            cfg, a.rounds, qlogic::RandomSource(require_seed(a.seed)), sink,
            a.threads);
        out = session_json(a.name, st, eve);
        out["reveal_fraction"] = a.reveal;
    } else if (a.name == "ekert-c") {
        const auto source = qlogic::PairSource::anticorrelated_default();
        // Defaults reach the classical bound |S| = 2 exactly.
        const qlogic::EkertClassicalSettings settings{
            {0, {+1, -1}}, {1, {+1, -1}}, {0, {+1, -1}}, {0, {-1, +1}}};
        if (a.exact) {
            out = chsh_json(a.name, qlogic::ekert_classical_exact(source, settings));
        } else {
            out = chsh_json(a.name,
                            qlogic::run_ekert_classical(
                                source, settings, a.rounds,
                                qlogic::RandomSource(require_seed(a.seed)),
                                sink, a.threads));
        }
    } else if (a.name == "ekert-q") {
        const auto deg = parse_angles(a.angles);
        const qlogic::EkertAngles ang{deg[0] * kPi / 180.0, deg[1] * kPi / 180.0,
                                      deg[2] * kPi / 180.0, deg[3] * kPi / 180.0};
        if (a.exact) {
            out = chsh_json(a.name, qlogic::ekert_quantum_exact(ang));
        } else {
            out = chsh_json(a.name,
                            qlogic::run_ekert_quantum(
                                ang, a.rounds,
                                qlogic::RandomSource(require_seed(a.seed)),
                                sink, a.threads));
        }
        out["angles_deg"] = deg;
    } else {
        throw CLI::ValidationError(
            "protocol", "unknown protocol '" + a.name +
                            "' (bb84-choc, bb84-q, ks, ekert-c, ekert-q)");
    }

    if (sink) write_transcript(a.transcript, transcript);
    print_json(out);
}

// ---------------------------------------------------------------------------
// random subcommands

void run_random_spin32(std::uint64_t bits, std::uint64_t seed,
                       double theta_deg) {
    const auto probs =
        qlogic::spin32_rotation_probs(theta_deg * kPi / 180.0);
    qlogic::RandomSource root(seed);
    std::vector<int> symbols;
    symbols.reserve(bits);
    for (std::uint64_t i = 0; i < bits; ++i) {
        qlogic::RandomSource rng = root.split(i);
        const double u = rng.next_double();
        double acc = 0;
        int s = 3;
        for (int k = 0; k < 4; ++k) {
            acc += probs[k];
            if (u < acc) { s = k; break; }
        }
        symbols.push_back(s);
    }
    const qlogic::SymbolStream stream(4, std::move(symbols));
    const auto rule = qlogic::GroupingRule::identify({0, 0, 1, 1});
    const auto bit_vec = qlogic::map_outcomes_to_bits(stream, rule);
    const auto st = qlogic::bit_stats(bit_vec);
    json j;
    j["theta_deg"] = theta_deg;
    j["outcome_probabilities"] = probs;
    j["grouping"] = "0,1 -> 0; 2,3 -> 1";
    j["bits"] = st.count;
    j["frequency_of_ones"] = st.frequency_of_ones;
    j["runs"] = st.runs;
    j["longest_run"] = st.longest_run;
    std::string head;
    for (std::size_t i = 0; i < bit_vec.size() && i < 64; ++i)
        head += bit_vec[i] ? '1' : '0';
    j["bits_head"] = head;
    print_json(j);
}

std::vector<std::uint8_t> read_bits_stdin() {
    std::vector<std::uint8_t> bits;
    char c;
    while (std::cin.get(c)) {
        if (c == '0') bits.push_back(0);
        else if (c == '1') bits.push_back(1);
        else if (c == '\n' || c == '\r' || c == ' ' || c == '\t') continue;
        else
            throw CLI::ValidationError(
                "stdin", std::string("unexpected character '") + c +
                             "' in bit stream");
    }
    return bits;
}

void run_random_vn() {
    const auto out = qlogic::von_neumann_extract(read_bits_stdin());
    std::string s;
    s.reserve(out.size());
    for (auto b : out) s += b ? '1' : '0';
    std::cout << s << "\n";
}

void run_random_stats() {
    const auto st = qlogic::bit_stats(read_bits_stdin());
    json j;
    j["bits"] = st.count;
    j["frequency_of_ones"] = st.frequency_of_ones;
    j["runs"] = st.runs;
    j["longest_run"] = st.longest_run;
    print_json(j);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthogonality logics, realizations, protocols"};
    app.require_subcommand(1);

    std::string src;
    std::optional<std::string> parity_subset;
    int dim = 3, restarts = 20, threads = 1;
    std::optional<std::uint64_t> seed;
    std::uint64_t bits = 0;
    double theta_deg = 90.0;
    ProtocolArgs pargs;
    int action = 0;
    enum {
        kStates = 1, kPartition, kBalls, kExport, kVerify, kSearch,
        kProtocol, kSpin32, kVn, kStats
    };

    auto* logic = app.add_subcommand("logic", "inspect a logic");
    auto* states = logic->add_subcommand("states", "enumerate two-valued states");
    states->add_option("src", src, "catalog name or JSON file")->required();
    states->callback([&] { action = kStates; });
    auto* partition =
        logic->add_subcommand("partition", "print the induced state partitions");
    partition->add_option("src", src, "catalog name or JSON file")->required();
    partition->callback([&] { action = kPartition; });
    auto* balls = logic->add_subcommand("balls", "print the ball types");
    balls->add_option("src", src, "catalog name or JSON file")->required();
    balls->callback([&] { action = kBalls; });
    auto* export_cmd = logic->add_subcommand("export", "dump a logic as JSON");
    export_cmd->add_option("src", src, "catalog name or JSON file")->required();
    export_cmd->callback([&] { action = kExport; });

    auto* ks = app.add_subcommand("ks", "noncolorability checks");
    auto* verify = ks->add_subcommand(
        "verify", "enumerate states; optionally check a parity subset");
    verify->add_option("src", src, "catalog name or JSON file")->required();
    verify->add_option("--parity-subset", parity_subset,
                       "comma-separated context ids");
    verify->callback([&] { action = kVerify; });

    auto* realize = app.add_subcommand("realize", "vector realizations");
    auto* search = realize->add_subcommand(
        "search", "randomized search for a unit-vector realization");
    search->add_option("src", src, "catalog name or JSON file")->required();
    search->add_option("--dim", dim, "ambient dimension")->required();
    search->add_option("--restarts", restarts, "independent restarts")
        ->default_val(20);
    search->add_option("--seed", seed, "root seed (required)");
    search->add_option("--threads", threads, "worker threads")->default_val(1);
    search->callback([&] { action = kSearch; });

    auto* protocol = app.add_subcommand("protocol", "key and correlation protocols");
    auto* prun = protocol->add_subcommand("run", "run a protocol session");
    prun->add_option("name", pargs.name,
                     "bb84-choc | bb84-q | ks | ekert-c | ekert-q")
        ->required();
    prun->add_option("--rounds", pargs.rounds, "number of rounds");
    prun->add_option("--seed", pargs.seed, "root seed (required unless --exact)");
    prun->add_option("--eve", pargs.eve,
                     "none | intercept-random | intercept-fixed:K | omniscient")
        ->default_val("none");
    prun->add_option("--transcript", pargs.transcript,
                     "write a per-round CSV transcript to this file");
    prun->add_option("--reveal", pargs.reveal,
                     "revealed fraction of kept rounds (ks only)")
        ->default_val(0.1);
    prun->add_flag("--exact", pargs.exact,
                   "exact-expectation mode (ekert-c, ekert-q)");
    prun->add_option("--angles", pargs.angles,
                     "a,a',b,b' in degrees (ekert-q)");
    prun->add_option("--threads", pargs.threads, "worker threads")
        ->default_val(1);
    prun->callback([&] { action = kProtocol; });

    auto* random = app.add_subcommand("random", "bit-stream generation and tests");
    auto* spin32 = random->add_subcommand(
        "spin32", "sample a tilted four-level source and group to bits");
    spin32->add_option("--bits", bits, "number of draws")->required();
    spin32->add_option("--seed", seed, "root seed (required)");
    spin32->add_option("--theta", theta_deg, "tilt angle in degrees")
        ->default_val(90.0);
    spin32->callback([&] { action = kSpin32; });
    auto* vn = random->add_subcommand(
        "vn", "von Neumann extraction: bits on stdin, bits on stdout");
    vn->callback([&] { action = kVn; });
    auto* stats = random->add_subcommand("stats", "bit statistics from stdin");
    stats->callback([&] { action = kStats; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        switch (action) {
        case kStates: run_logic_states(src); break;
        case kPartition: run_logic_partition(src); break;
        case kBalls: run_logic_balls(src); break;
        case kExport: run_logic_export(src); break;
        case kVerify: run_ks_verify(src, parity_subset); break;
        case kSearch:
            run_realize_search(src, dim, restarts, require_seed(seed), threads);
            break;
        case kProtocol:
            if (!pargs.exact &&
                (pargs.name == "bb84-choc" || pargs.name == "bb84-q" ||
                 pargs.name == "ks" || pargs.name == "ekert-c" ||
                 pargs.name == "ekert-q") &&
                pargs.rounds == 0)
                throw CLI::ValidationError("--rounds",
                                           "a positive round count is required");
            run_protocol(pargs);
            break;
        case kSpin32:
            run_random_spin32(bits, require_seed(seed), theta_deg);
            break;
        case kVn: run_random_vn(); break;
        case kStats: run_random_stats(); break;
        default:
            std::cerr << "no action selected\n";
            return 2;
        }
    } catch (const analysis_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.get_name() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
