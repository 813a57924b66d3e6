// riddler: command-line front end for corpus ingestion, pair generation,
// offline evaluation, statistics and the game server.

#include <pthread.h>

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "riddler/riddler.hpp"
#include "riddler/service.hpp"

namespace {

using namespace riddler;
namespace svc = riddler::service;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IngestError("cannot write " + path);
    return out;
}

// Writes to the file when a path is given, stdout otherwise.
template <class F>
void emit(const std::string& path, F&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    auto out = open_out(path);
    write(out);
    if (!out) throw IngestError("write failed: " + path);
}

LogReadResult read_log_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("cannot read " + path);
    auto res = read_log(in);
    for (const auto& r : res.rejects) std::cerr << path << ":" << r.line << ": skipped: " << r.reason << '\n';
    return res;
}

void write_pairs(std::ostream& out, const PairBatch& batch, bool with_header) {
    if (with_header) out << "# word_a\tword_b\torigin\n";
    for (const auto& p : batch.pairs) out << p.word_a << '\t' << p.word_b << '\t' << to_string(p.origin) << '\n';
}

void report_dropped(const PairBatch& batch) {
    for (const auto& d : batch.dropped) std::cerr << "dropped " << d.word_a << " / " << d.word_b << ": " << d.reason << '\n';
    if (batch.shortfall) std::cerr << "warning: fewer pairs than requested\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Word riddle game tools"};
    app.require_subcommand(1);

    // ingest
    std::string ingest_lang, ingest_genre = "wikipedia", ingest_out, ingest_base;
    std::vector<std::string> ingest_files;
    auto* ingest = app.add_subcommand("ingest", "Build a corpus snapshot from plain-text files");
    ingest->add_option("--lang", ingest_lang, "Language code")->required();
    ingest->add_option("--genre", ingest_genre, "wikipedia, books, parliamentary or subtitles");
    ingest->add_option("--base", ingest_base, "Existing snapshot to extend");
    ingest->add_option("-o,--out", ingest_out, "Snapshot path (stdout when omitted)");
    ingest->add_option("files", ingest_files, "One sentence per line")->required()->check(CLI::ExistingFile);

    // mine-pairs
    std::string mine_lang, mine_emb, mine_snapshot, mine_out, mine_config;
    std::size_t mine_sample = 1'000'000, mine_top = 250;
    std::uint64_t mine_seed = 1;
    auto* mine = app.add_subcommand("mine-pairs", "Sample embedding pairs and keep the most similar ones");
    mine->add_option("--lang", mine_lang)->required();
    mine->add_option("--embeddings", mine_emb, "word2vec text format")->required()->check(CLI::ExistingFile);
    auto* sample_opt = mine->add_option("--sample", mine_sample, "Number of random pairs to draw");
    auto* top_opt = mine->add_option("--top", mine_top, "Pairs to keep");
    mine->add_option("--seed", mine_seed);
    mine->add_option("--config", mine_config, "Service config supplying mining defaults")->check(CLI::ExistingFile);
    mine->add_option("--corpus", mine_snapshot, "Snapshot; pairs outside its vocabulary are dropped")
        ->check(CLI::ExistingFile);
    mine->add_option("-o,--out", mine_out);

    // manual-pairs
    std::string man_lang, man_series, man_snapshot, man_out;
    auto* manual = app.add_subcommand("manual-pairs", "All pairs inside each word series");
    manual->add_option("--lang", man_lang)->required();
    manual->add_option("--series", man_series, "Series file ('# name' headers, one word per line)")
        ->required()
        ->check(CLI::ExistingFile);
    manual->add_option("--corpus", man_snapshot, "Snapshot for the vocabulary check")->check(CLI::ExistingFile);
    manual->add_option("-o,--out", man_out);

    // cstp-eval
    std::string ev_log, ev_journal, ev_config, ev_oracle = "counts", ev_rule, ev_cmd, ev_out, ev_cont = "final";
    std::vector<std::string> ev_snapshots;
    double ev_alpha = 1.0, ev_tol = cstp::kTieTolerance;
    std::uint64_t ev_seed = 1;
    int ev_timeout_ms = 10'000;
    auto* eval = app.add_subcommand("cstp-eval", "Compare a model's riddle answers with the human log");
    eval->add_option("--log", ev_log, "Annotation log CSV")->required()->check(CLI::ExistingFile);
    eval->add_option("--journal", ev_journal, "Service journal holding the served riddles")
        ->required()
        ->check(CLI::ExistingFile);
    eval->add_option("--config", ev_config, "Service config naming the corpora")->check(CLI::ExistingFile);
    eval->add_option("--snapshot", ev_snapshots, "Corpus snapshot (repeatable)")->check(CLI::ExistingFile);
    eval->add_option("--oracle", ev_oracle, "counts, coin or external")
        ->check(CLI::IsMember({"counts", "coin", "external"}));
    eval->add_option("--rule", ev_rule, "direct, bayes, membership or autoregressive")
        ->check(CLI::IsMember({"direct", "bayes", "membership", "autoregressive"}));
    eval->add_option("--continuation", ev_cont, "final or full (autoregressive rule)")
        ->check(CLI::IsMember({"final", "full"}));
    eval->add_option("--alpha", ev_alpha, "Additive smoothing for the count oracle");
    eval->add_option("--seed", ev_seed, "Seed for the coin oracle");
    eval->add_option("--tolerance", ev_tol, "Log-space tie tolerance");
    eval->add_option("--oracle-cmd", ev_cmd, "Command line of an external oracle process");
    eval->add_option("--oracle-timeout-ms", ev_timeout_ms);
    eval->add_option("-o,--out", ev_out);

    // stats
    std::string st_log, st_out;
    std::size_t st_min = 3, st_bins = 10;
    auto* stats = app.add_subcommand("stats", "Success rates by language and origin, and the per-pair histogram");
    stats->add_option("--log", st_log)->required()->check(CLI::ExistingFile);
    stats->add_option("--min-annotations", st_min);
    stats->add_option("--bins", st_bins);
    stats->add_option("-o,--out", st_out);

    // export-log
    std::string ex_journal, ex_out;
    auto* exp = app.add_subcommand("export-log", "Write the annotation log CSV from a service journal");
    exp->add_option("--journal", ex_journal)->required()->check(CLI::ExistingFile);
    exp->add_option("-o,--out", ex_out);

    // serve
    std::string sv_config, sv_host;
    int sv_port = 0;
    auto* serve = app.add_subcommand("serve", "Run the game server");
    serve->add_option("--config", sv_config)->required()->check(CLI::ExistingFile);
    serve->add_option("--host", sv_host);
    serve->add_option("--port", sv_port);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) {
            const Language lang = parse_language(ingest_lang);
            const Genre genre = parse_genre(ingest_genre);
            CorpusBuilder b(lang);
            if (!ingest_base.empty()) {
                auto base = svc::load_snapshot_file(ingest_base, lang);
                for (const auto& s : base->sentences()) b.add_prepared(s);
            }
            for (const auto& f : ingest_files) {
                const std::size_t n = b.add_file(f, genre);
                std::cerr << f << ": " << n << " sentences\n";
            }
            auto ix = b.build();
            emit(ingest_out, [&](std::ostream& out) { save_snapshot(*ix, out); });
            std::cerr << "corpus: " << ix->size() << " sentences, " << ix->vocabulary().size() << " types\n";
        } else if (*mine) {
            const Language lang = parse_language(mine_lang);
            if (!mine_config.empty()) {
                const auto cfg = svc::load_config(mine_config);
                if (sample_opt->count() == 0) mine_sample = cfg.mining_sample_n;
                if (top_opt->count() == 0) mine_top = cfg.mining_top_k;
            }
            const auto table = load_embeddings(mine_emb, lang);
            CorpusPtr ix;
            if (!mine_snapshot.empty()) ix = svc::load_snapshot_file(mine_snapshot, lang);
            PairValidator extra;
            if (ix)
                extra = [&](std::string_view a, std::string_view b) { return pair_problems(lang, a, b, ix.get()); };
            Rng rng(mine_seed);
            const auto batch = mine_pairs(table, mine_sample, mine_top, rng, extra);
            emit(mine_out, [&](std::ostream& out) { write_pairs(out, batch, true); });
            report_dropped(batch);
        } else if (*manual) {
            const Language lang = parse_language(man_lang);
            CorpusPtr ix;
            if (!man_snapshot.empty()) ix = svc::load_snapshot_file(man_snapshot, lang);
            const auto batch = manual_series_pairs(lang, load_series(man_series), ix.get());
            emit(man_out, [&](std::ostream& out) { write_pairs(out, batch, true); });
            report_dropped(batch);
        } else if (*eval) {
            std::map<Language, CorpusPtr> corpora;
            if (!ev_config.empty()) corpora = svc::load_corpora(svc::load_config(ev_config));
            for (const auto& path : ev_snapshots) {
                std::ifstream in(path, std::ios::binary);
                if (!in) throw IngestError("cannot read " + path);
                auto ix = load_snapshot(in);
                corpora[ix->language()] = ix;
            }
            if (corpora.empty()) throw ConfigError("cstp-eval needs --config or --snapshot");

            svc::ServiceConfig offline;
            svc::GameService game(offline, {});
            {
                std::ifstream in(ev_journal, std::ios::binary);
                if (!in) throw IngestError("cannot read " + ev_journal);
                game.replay(in);
            }
            const auto log = read_log_file(ev_log);

            const std::string rule = ev_rule.empty() ? "direct" : ev_rule;
            const auto mode = ev_cont == "full" ? cstp::Continuation::full : cstp::Continuation::final_token;
            // Count oracles are per language; everything else is shared.
            std::map<Language, std::unique_ptr<cstp::CountOracle>> counts;
            std::unique_ptr<cstp::CoinFlipOracle> coin;
            std::unique_ptr<cstp::ExternalOracle> external;
            std::map<Language, std::unique_ptr<cstp::Judge>> judges;
            auto judge_for = [&](auto& oracle) -> std::unique_ptr<cstp::Judge> {
                using O = std::remove_reference_t<decltype(oracle)>;
                if (rule == "direct") {
                    if constexpr (std::is_base_of_v<cstp::Conditional, O>)
                        return std::make_unique<cstp::DirectJudge>(oracle, ev_tol);
                } else if (rule == "bayes") {
                    if constexpr (std::is_base_of_v<cstp::ContextGenerative, O>)
                        return std::make_unique<cstp::BayesJudge>(oracle, ev_tol);
                } else if (rule == "membership") {
                    if constexpr (std::is_base_of_v<cstp::Membership, O>)
                        return std::make_unique<cstp::MembershipJudge>(oracle, ev_tol);
                } else if (rule == "autoregressive") {
                    if constexpr (std::is_base_of_v<cstp::Autoregressive, O>)
                        return std::make_unique<cstp::AutoregressiveJudge>(oracle, mode, ev_tol);
                }
                throw ConfigError("oracle '" + ev_oracle + "' does not support rule '" + rule + "'");
            };
            if (ev_oracle == "coin") {
                coin = std::make_unique<cstp::CoinFlipOracle>(ev_seed);
            } else if (ev_oracle == "external") {
                cstp::ExternalOracleConfig oc;
                std::istringstream words(ev_cmd);
                for (std::string w; words >> w;) oc.argv.push_back(w);
                oc.timeout = std::chrono::milliseconds(ev_timeout_ms);
                external = std::make_unique<cstp::ExternalOracle>(std::move(oc));
            }
            for (const auto& [lang, ix] : corpora) {
                if (ev_oracle == "counts") {
                    counts[lang] = std::make_unique<cstp::CountOracle>(*ix, ev_alpha);
                    judges[lang] = judge_for(*counts[lang]);
                } else if (coin) {
                    judges[lang] = judge_for(*coin);
                } else {
                    judges[lang] = judge_for(*external);
                }
            }
            // Records are split by language so each goes to its own judge.
            cstp::AgreementReport rep;
            std::map<PairId, cstp::AgreementRow> rows;
            for (const auto& [lang, judge] : judges) {
                std::vector<AnnotationRecord> part;
                for (const auto& r : log.records)
                    if (r.language == lang) part.push_back(r);
                if (part.empty()) continue;
                const auto sub = cstp::agreement_report(
                    *judge, part, [&](RiddleId id) { return game.riddle_view(id); }, *corpora.at(lang));
                auto merge = [](cstp::AgreementCounts& into, const cstp::AgreementCounts& c) {
                    into.n += c.n;
                    into.human_correct += c.human_correct;
                    into.model_correct += c.model_correct;
                    into.agree += c.agree;
                };
                merge(rep.overall, sub.overall);
                for (const auto& [o, c] : sub.origins) merge(rep.origins[o], c);
                for (const auto& row : sub.pairs) rows[row.pair] = row;
                rep.skipped.insert(rep.skipped.end(), sub.skipped.begin(), sub.skipped.end());
                rep.abstentions += sub.abstentions;
            }
            for (const auto& r : log.records)
                if (!judges.contains(r.language))
                    rep.skipped.push_back({r.id, "no corpus for " + std::string(to_string(r.language))});
            for (auto& [id, row] : rows) rep.pairs.push_back(row);
            emit(ev_out, [&](std::ostream& out) { cstp::write_agreement_report(out, rep); });
        } else if (*stats) {
            const auto log = read_log_file(st_log);
            const auto rep = breakdown(log.records, log.rejects.size());
            const auto hist = histogram(log.records, st_min, st_bins);
            emit(st_out, [&](std::ostream& out) {
                write_breakdown(out, rep);
                out << '\n';
                write_histogram(out, hist);
                if (!log.records.empty()) out << "overall_success_pct\t" << format_double(overall_success(log.records)) << '\n';
            });
        } else if (*exp) {
            svc::ServiceConfig offline;
            svc::GameService game(offline, {});
            std::ifstream in(ex_journal, std::ios::binary);
            if (!in) throw IngestError("cannot read " + ex_journal);
            game.replay(in);
            emit(ex_out, [&](std::ostream& out) { game.export_log(out); });
        } else if (*serve) {
            // SIGINT/SIGTERM are taken by a waiter thread; blocked before any other thread starts.
            sigset_t stop_signals;
            sigemptyset(&stop_signals);
            sigaddset(&stop_signals, SIGINT);
            sigaddset(&stop_signals, SIGTERM);
            pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);
            auto cfg = svc::load_config(sv_config);
            if (!sv_host.empty()) cfg.host = sv_host;
            if (sv_port) cfg.port = sv_port;
            auto corpora = svc::load_corpora(cfg);
            for (const auto& [l, ix] : corpora) std::cerr << to_string(l) << ": " << ix->size() << " sentences\n";
            svc::GameService game(cfg, corpora);
            game.open_journal(cfg.journal);
            for (const auto& [l, files] : cfg.pair_files)
                for (const auto& f : files) {
                    const auto dropped = game.load_pair_file(f, l);
                    if (!dropped.empty()) std::cerr << f << ": " << dropped.size() << " pairs rejected\n";
                }
            httplib::Server srv;
            svc::mount(srv, game);
            if (!srv.bind_to_port(cfg.host, cfg.port))
                throw ConfigError("cannot listen on " + cfg.host + ":" + std::to_string(cfg.port));
            std::thread([&srv, stop_signals] {
                int sig = 0;
                sigwait(&stop_signals, &sig);
                srv.wait_until_ready();
                srv.stop();
            }).detach();
            std::cerr << "listening on " << cfg.host << ":" << cfg.port << '\n';
            srv.listen_after_bind();
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
