#include "smartotps/cost_model.hpp"
#include "smartotps/errors.hpp"
#include "smartotps/mnemonic.hpp"
#include "smartotps/scenarios.hpp"
#include "smartotps/script.hpp"
#include "smartotps/security.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace smartotps;

namespace {

constexpr int kExitProtocol = 1;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

constexpr const char* kJournal = "journal.txt";
constexpr const char* kDefaultParams = "128,16,2,8,1";

struct Failure {
    int code;
    std::string category;
    std::string message;
};

int fail(const Failure& f)
{
    std::cerr << "error[" << f.category << "]: " << f.message << '\n';
    return f.code;
}

std::string env_or(const char* name, const std::string& fallback)
{
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : fallback;
}

std::uint64_t rng_seed(const std::string& seed_file)
{
    std::string text;
    if (!seed_file.empty()) {
        std::ifstream in(seed_file);
        if (!in)
            throw IntegrityError("cannot read seed file " + seed_file);
        in >> text;
    } else {
        text = env_or("SMARTOTPS_RNG_SEED", "");
    }
    if (text.empty())
        return std::random_device{}();
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(text, &used);
        if (used == text.size())
            return v;
    } catch (const std::exception&) {
    }
    throw ParseError("seed must be a decimal integer, got '" + text + "'");
}

std::vector<std::string> read_journal(const fs::path& dir)
{
    std::vector<std::string> lines;
    std::ifstream in(dir / kJournal);
    std::string line;
    while (std::getline(in, line))
        lines.push_back(line);
    return lines;
}

/// Rebuilds the world from the journal. Every journaled line succeeded once, so
/// a replay failure means the state directory was edited or belongs to another build.
void replay(ScriptRunner& runner, const std::vector<std::string>& journal)
{
    for (std::size_t i = 0; i < journal.size(); ++i) {
        try {
            runner.execute(journal[i]);
        } catch (const std::exception& e) {
            throw IntegrityError("journal line " + std::to_string(i + 1) + " no longer replays: " + e.what());
        }
    }
}

void append_journal(const fs::path& dir, const std::vector<std::string>& lines)
{
    fs::create_directories(dir);
    std::ofstream out(dir / kJournal, std::ios::app);
    for (const auto& l : lines)
        out << l << '\n';
    if (!out)
        throw IntegrityError("cannot write " + (dir / kJournal).string());
}

void save_client(ScriptRunner& runner, const fs::path& dir)
{
    if (runner.bootstrapped())
        runner.session().client().save((dir / "client").string());
}

/// Replays the state directory, runs `line` and journals it. A command that
/// reached the ledger stays journaled even when it reported a revert.
int stateful(const fs::path& dir, const std::string& line, bool journal = true)
{
    const auto lines = read_journal(dir);
    if (lines.empty())
        throw ProtocolAbort("no wallet in " + dir.string() + "; run bootstrap first");
    ScriptRunner runner;
    replay(runner, lines);
    const std::string out = runner.execute(line);
    if (journal) {
        append_journal(dir, {line});
        save_client(runner, dir);
    }
    std::cout << out;
    if (out.find("status=revert") != std::string::npos)
        return fail({kExitProtocol, "protocol", "transaction reverted"});
    return 0;
}

std::string hex_of(const auto& bytes)
{
    return to_hex(ByteView(bytes.data(), bytes.size()));
}

/// Accepts hex or a whitespace-separated mnemonic.
std::string otp_hex(const std::string& text)
{
    const auto words = split_words(text);
    if (words.size() > 1)
        return mnemonic_decode_digest(Wordlist::standard(), words).hex();
    return Digest::from_hex(text).hex();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"SmartOTPs two-factor wallet simulator"};
    app.require_subcommand(1);
    std::string state_dir = env_or("SMARTOTPS_STATE_DIR", ".smartotps");
    app.add_option("--state-dir", state_dir, "Directory holding the journal and the client store");

    std::function<int()> action;

    auto* boot = app.add_subcommand("bootstrap", "Deploy a new wallet");
    std::string mode = "secure";
    std::string params = env_or("SMARTOTPS_PARAMS", kDefaultParams);
    std::string seed_file;
    std::uint64_t balance = 1000;
    std::uint32_t depth = 12;
    boot->add_option("--mode", mode, "secure or insecure")->check(CLI::IsMember({"secure", "insecure"}));
    boot->add_option("--params", params, "S,N,P,NS,LS[,LEN_MAX]");
    boot->add_option("--seed-file", seed_file, "File with a decimal RNG seed");
    boot->add_option("--balance", balance, "Initial balance of the user account");
    boot->add_option("--depth", depth, "Confirmations to wait before revealing an OTP");
    boot->callback([&] {
        action = [&] {
            const fs::path dir(state_dir);
            if (!read_journal(dir).empty())
                throw ProtocolAbort("a wallet already exists in " + dir.string());
            std::mt19937_64 rng(rng_seed(seed_file));
            Seed k;
            std::array<std::uint8_t, 32> wallet{};
            for (auto& b : k.bytes)
                b = static_cast<std::uint8_t>(rng() & 0xffu);
            for (auto& b : wallet)
                b = static_cast<std::uint8_t>(rng() & 0xffu);
            const std::vector<std::string> setup = {
                "params " + params,         "seed " + k.hex(),
                "wallet-seed " + hex_of(wallet), "account user " + std::to_string(balance),
                "depth " + std::to_string(depth), "bootstrap " + mode,
            };
            ScriptRunner runner;
            std::string out;
            for (const auto& l : setup)
                out += runner.execute(l);
            append_journal(dir, setup);
            save_client(runner, dir);
            std::cout << out << "params=" << runner.params().describe() << '\n'
                      << "seed_words=" << join_words(mnemonic_encode(Wordlist::standard(), ByteView(k.bytes)))
                      << '\n';
            return 0;
        };
    });

    auto* fund = app.add_subcommand("fund", "Move tokens from the user account into the wallet");
    std::uint64_t amount = 0;
    fund->add_option("--amount", amount)->required();
    fund->callback([&] { action = [&] { return stateful(state_dir, "fund " + std::to_string(amount)); }; });

    auto* op = app.add_subcommand("op", "Initiate or confirm an operation");
    op->require_subcommand(1);
    auto* init = op->add_subcommand("init", "Sign and submit an operation, wait for confirmations");
    std::string type, addr;
    std::uint64_t param = 0;
    init->add_option("--type", type, "transfer|daily-limit|lr-timeout|lr-address")->required();
    init->add_option("--addr", addr)->required();
    init->add_option("--param", param);
    init->callback([&] {
        action = [&] {
            parse_op_type(type);
            return stateful(state_dir, "init " + type + " " + addr + " " + std::to_string(param));
        };
    });
    auto* confirm = op->add_subcommand("confirm", "Reveal the OTP of a pending operation");
    std::uint64_t op_id = 0;
    std::string otp;
    confirm->add_option("--op-id", op_id)->required();
    confirm->add_option("--otp", otp, "OTP as hex or mnemonic words; read from the authenticator when absent");
    confirm->callback([&] {
        action = [&] {
            std::string line = "confirm " + std::to_string(op_id);
            if (!otp.empty())
                line += " " + otp_hex(otp);
            return stateful(state_dir, line);
        };
    });

    auto* otp_cmd = app.add_subcommand("otp", "Authenticator display");
    otp_cmd->require_subcommand(1);
    auto* show = otp_cmd->add_subcommand("show", "Show the OTP of an operation");
    show->add_option("--op-id", op_id)->required();
    show->callback([&] { action = [&] { return stateful(state_dir, "otp " + std::to_string(op_id), false); }; });

    auto* subtree = app.add_subcommand("subtree", "Subtree management");
    subtree->require_subcommand(1);
    subtree->add_subcommand("next", "Introduce the next subtree")->callback([&] {
        action = [&] { return stateful(state_dir, "subtree-next"); };
    });

    auto* root = app.add_subcommand("root", "Parent tree management");
    root->require_subcommand(1);
    auto* rotate = root->add_subcommand("rotate", "Introduce a new parent tree");
    rotate->add_option("--mode", mode)->check(CLI::IsMember({"secure", "insecure"}));
    rotate->callback([&] { action = [&] { return stateful(state_dir, "root-rotate " + mode); }; });

    auto* chain = app.add_subcommand("chain", "Simulated ledger");
    chain->require_subcommand(1);
    std::uint64_t blocks = 1;
    auto* mine = chain->add_subcommand("mine", "Mine empty blocks");
    mine->add_option("--blocks", blocks);
    mine->callback([&] { action = [&] { return stateful(state_dir, "mine " + std::to_string(blocks)); }; });
    chain->add_subcommand("status", "Height and state hash")->callback([&] {
        action = [&] { return stateful(state_dir, "state", false); };
    });
    chain->add_subcommand("log", "Ledger event log")->callback([&] {
        action = [&] { return stateful(state_dir, "log", false); };
    });

    auto* attack = app.add_subcommand("attack", "Built-in adversary scenarios");
    attack->require_subcommand(1);
    std::string scenario;
    std::uint64_t scenario_seed = 1;
    auto* run = attack->add_subcommand("run", "Run one scenario");
    run->add_option("name", scenario)->required();
    run->add_option("--seed", scenario_seed);
    run->callback([&] {
        action = [&] {
            const ScenarioResult r = run_scenario(scenario, scenario_seed);
            std::cout << r.report();
            return r.passed() ? 0 : fail({kExitProtocol, "protocol", "scenario " + scenario + " failed"});
        };
    });
    attack->add_subcommand("list", "List scenarios")->callback([&] {
        action = [&] {
            for (const auto& n : scenario_names())
                std::cout << n << '\n';
            return 0;
        };
    });

    auto* script = app.add_subcommand("script", "Scenario scripts");
    script->require_subcommand(1);
    std::string script_file;
    auto* script_run = script->add_subcommand("run", "Execute a script file");
    script_run->add_option("file", script_file)->required()->check(CLI::ExistingFile);
    script_run->callback([&] {
        action = [&] {
            std::ifstream in(script_file);
            ScriptRunner runner;
            std::cout << runner.run(in);
            return 0;
        };
    });

    auto* cost = app.add_subcommand("cost", "Cost model");
    cost->require_subcommand(1);
    std::string grid = "H=7..10;P=1;L=all";
    std::string table_text;
    auto* sweep_cmd = cost->add_subcommand("sweep", "CSV of O^t_cost over a parameter grid");
    sweep_cmd->add_option("--grid", grid, "e.g. H=7..10;HS=7;P=1,2;L=all;S=128");
    sweep_cmd->add_option("--table", table_text, "Unit cost overrides, e.g. storage_new=22100,hash_base=30");
    sweep_cmd->callback([&] {
        action = [&] {
            std::cout << sweep_csv(sweep(SweepGrid::parse(grid), CostTable::parse(table_text)));
            return 0;
        };
    });
    int height = 10;
    std::uint32_t chain_length = 1;
    auto* optimum = cost->add_subcommand("optimum", "Optimal cache depth and its crossover with L=0");
    optimum->add_option("--height", height, "H = H_S");
    optimum->add_option("--chain", chain_length, "P");
    optimum->add_option("--table", table_text);
    optimum->callback([&] {
        action = [&] {
            const CostTable t = CostTable::parse(table_text);
            const int best = optimal_depth(height, height, chain_length, t);
            const auto cached = params_for(height, height, chain_length, best);
            const auto cross = crossover(cached, params_for(height, height, chain_length, 0), t);
            std::cout << "H=" << height << "\nP=" << chain_length << "\nL_opt=" << best
                      << "\ncrossover=" << (cross ? std::to_string(*cross) : "none") << '\n';
            return 0;
        };
    });

    auto* security = app.add_subcommand("security", "Security bounds");
    security->require_subcommand(1);
    int lambda = 128;
    std::uint64_t leaves = 64;
    auto* calc = security->add_subcommand("calc", "Required OTP size");
    calc->add_option("--lambda", lambda);
    calc->add_option("--leaves", leaves);
    calc->callback([&] {
        action = [&] {
            std::cout << security_report(lambda, leaves);
            return 0;
        };
    });

    auto* mnemonic = app.add_subcommand("mnemonic", "Mnemonic codec");
    mnemonic->require_subcommand(1);
    std::string hex;
    std::vector<std::string> words;
    auto* encode = mnemonic->add_subcommand("encode", "Hex to words");
    encode->add_option("hex", hex)->required();
    encode->callback([&] {
        action = [&] {
            std::cout << join_words(mnemonic_encode(Wordlist::standard(), from_hex(hex))) << '\n';
            return 0;
        };
    });
    auto* decode = mnemonic->add_subcommand("decode", "Words to hex");
    decode->add_option("words", words)->required();
    decode->callback([&] {
        action = [&] {
            std::string joined;
            for (const auto& w : words)
                joined += (joined.empty() ? "" : " ") + w;
            std::cout << to_hex(mnemonic_decode(Wordlist::standard(), split_words(joined))) << '\n';
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail({kExitUsage, "usage", e.what()});
    }

    try {
        return action ? action() : fail({kExitUsage, "usage", "no command given"});
    } catch (const ParseError& e) {
        return fail({kExitUsage, "usage", e.what()});
    } catch (const DomainError& e) {
        return fail({kExitUsage, "usage", e.what()});
    } catch (const ProtocolAbort& e) {
        return fail({kExitProtocol, "protocol", e.what()});
    } catch (const ContractRevert& e) {
        return fail({kExitProtocol, "protocol", e.what()});
    } catch (const IntegrityError& e) {
        return fail({kExitData, "data", e.what()});
    } catch (const ProofError& e) {
        return fail({kExitData, "data", e.what()});
    } catch (const std::exception& e) {
        return fail({kExitInternal, "internal", e.what()});
    }
}
