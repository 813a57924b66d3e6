#pragma once

#include <optional>
#include <string>

#include "httplib.h"
#include "json.hpp"
#include "riddler/error.hpp"
#include "riddler/service/game.hpp"
#include "riddler/stats.hpp"

namespace riddler::service {

inline constexpr int kApiVersion = 1;

using nlohmann::json;

inline json to_json(const ServedRiddle& r) {
    json j{{"riddle_id", raw(r.id)}, {"k", r.k}, {"sentences", r.sentences}, {"options", r.options}, {"served_at", r.served_at}};
    if (r.competition) j["competition_id"] = raw(*r.competition);
    return j;
}

inline json to_json(const AnswerResult& r) {
    json totals{{"cracker_points", r.cracker_points}};
    if (r.competition) {
        totals["competition_id"] = raw(*r.competition);
        totals["competition_points"] = r.competition_points.value_or(0.0);
    }
    return {{"riddle_id", raw(r.riddle_id)},
            {"correct", r.correct},
            {"points", r.points},
            {"answer", r.answer},
            {"running_totals", totals}};
}

inline json to_json(const Profile& p) {
    return {{"player_id", raw(p.id)},
            {"username", p.username},
            {"language", to_string(p.language)},
            {"k_setting", p.k},
            {"created_at", p.created_at}};
}

inline json to_json(const PlayerScores& s) {
    return {{"cracker_points", s.cracker_points},
            {"blanker_success_rate", s.blanker_success_rate ? json(*s.blanker_success_rate) : json(nullptr)},
            {"blanker_annotation_count", s.blanker_annotation_count}};
}

inline json to_json(const PairSummary& p, std::size_t min_annotations) {
    json j{{"pair_id", raw(p.id)},      {"lang", to_string(p.language)}, {"word_a", p.word_a},
           {"word_b", p.word_b},        {"origin", to_string(p.origin)}, {"state", to_string(p.state)},
           {"annotations", p.annotations}, {"correct", p.correct}};
    j["success_rate"] = p.annotations >= min_annotations
                            ? json(static_cast<double>(p.correct) / static_cast<double>(p.annotations))
                            : json(nullptr);
    return j;
}

inline json to_json(const CompetitionView& c) {
    json rows = json::array();
    for (const auto& s : c.standings)
        rows.push_back({{"username", s.username}, {"points", s.points}, {"served", s.served}, {"answered", s.answered}});
    return {{"competition_id", raw(c.id)},
            {"language", to_string(c.language)},
            {"riddle_count", c.riddle_count},
            {"state", to_string(c.state)},
            {"standings", rows},
            {"summary", c.summary ? json(*c.summary) : json(nullptr)},
            {"created_at", c.created_at}};
}

inline json to_json(const BreakdownReport& rep) {
    static constexpr PairOrigin kOrigins[] = {PairOrigin::user_proposed, PairOrigin::manual, PairOrigin::embedding_mined};
    auto cell = [](const RateCell& c) {
        auto p = c.success_percent();
        return json{{"count", c.count}, {"correct", c.correct}, {"success_percent", p ? json(*p) : json(nullptr)}};
    };
    json langs = json::object();
    for (Language l : kAllLanguages) {
        json row{{"all", cell(rep.all(l))}};
        for (PairOrigin o : kOrigins) row[std::string(to_string(o))] = cell(rep.at(l, o));
        langs[std::string(to_string(l))] = row;
    }
    return {{"languages", langs}, {"rejects", rep.rejects}};
}

inline json to_json(const SuccessHistogram& h) {
    auto opt = [](std::optional<double> v) { return v ? json(*v) : json(nullptr); };
    return {{"bin_edges", h.bin_edges},
            {"counts", h.counts},
            {"right_closed", true},
            {"min_annotations", h.min_annotations},
            {"distinct_pairs", h.distinct_pairs},
            {"included_pairs", h.included_pairs},
            {"excluded_count", h.excluded_count},
            {"mean_annotations_per_pair", opt(h.mean_annotations_per_pair())},
            {"mean_annotations_per_pair_all", opt(h.mean_annotations_per_pair_all())}};
}

namespace detail {

inline void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_header("X-Api-Version", std::to_string(kApiVersion));
    res.set_content(body.dump(), "application/json");
}

inline void send_error(httplib::Response& res, int status, const std::string& msg, json extra = json::object()) {
    extra["error"] = msg;
    send(res, status, extra);
}

inline json body_of(const httplib::Request& req) {
    try {
        json j = json::parse(req.body);
        if (!j.is_object()) throw ValidationError("request body must be a JSON object");
        return j;
    } catch (const json::exception&) {
        throw ValidationError("request body is not valid JSON");
    }
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError(std::string("bad field '") + key + "'");
    }
}

inline std::uint64_t path_id(const httplib::Request& req, std::size_t i = 1) {
    try {
        return std::stoull(req.matches[static_cast<int>(i)].str());
    } catch (const std::exception&) {
        throw NotFoundError("bad id");
    }
}

// Maps library errors onto HTTP statuses.
template <class F>
void guarded(httplib::Response& res, F&& f) {
    try {
        f();
    } catch (const DuplicateSubmissionError& e) {
        send(res, 409, to_json(e.first()));
    } catch (const EmptyQueueError&) {
        res.status = 204;
        res.set_header("X-Api-Version", std::to_string(kApiVersion));
    } catch (const AuthError& e) {
        send_error(res, 401, e.what());
    } catch (const ForbiddenError& e) {
        send_error(res, 403, e.what());
    } catch (const NotFoundError& e) {
        send_error(res, 404, e.what());
    } catch (const ConflictError& e) {
        send_error(res, 409, e.what());
    } catch (const ValidationError& e) {
        send_error(res, 400, e.what());
    } catch (const ConfigError& e) {
        send_error(res, 400, e.what());
    } catch (const UndefinedValueError& e) {
        send_error(res, 404, e.what());
    } catch (const std::exception& e) {
        send_error(res, 500, e.what());
    }
}

}  // namespace detail

// Installs every API route on `srv`. The service must outlive the server.
inline void mount(httplib::Server& srv, GameService& game) {
    using detail::field;
    using detail::guarded;
    using detail::send;
    using httplib::Request;
    using httplib::Response;

    auto auth = [&game](const Request& req) {
        const std::string h = req.get_header_value("Authorization");
        if (!h.starts_with("Bearer ")) throw AuthError("missing bearer token");
        return game.authenticate(h.substr(7));
    };
    auto lang_param = [](const Request& req, const char* key) -> std::optional<Language> {
        if (!req.has_param(key)) return std::nullopt;
        auto l = try_parse_language(req.get_param_value(key));
        if (!l) throw ValidationError("unsupported language");
        return l;
    };

    srv.Post("/api/register", [=, &game](const Request& req, Response& res) {
        guarded(res, [&] {
            const json b = detail::body_of(req);
            auto lang = try_parse_language(field<std::string>(b, "language"));
            if (!lang) throw ValidationError("unsupported language");
            const PlayerId id =
                game.register_player(field<std::string>(b, "username"), field<std::string>(b, "password"), *lang);
            send(res, 201, to_json(game.profile(id)));
        });
    });

    srv.Post("/api/login", [=, &game](const Request& req, Response& res) {
        guarded(res, [&] {
            const json b = detail::body_of(req);
            send(res, 200, {{"token", game.login(field<std::string>(b, "username"), field<std::string>(b, "password"))}});
        });
    });

    srv.Get("/api/me", [=, &game](const Request& req, Response& res) {
        guarded(res, [&] { send(res, 200, to_json(game.profile(auth(req)))); });
    });

    srv.Patch("/api/me", [=, &game](const Request& req, Response& res) {
        guarded(res, [&] {
            const PlayerId me = auth(req);
            send(res, 200, to_json(game.update_settings(me, detail::body_of(req))));
        });
    });

    srv.Get("/api/riddle", [=, &game](const Request& req, Response& res) {
        guarded(res, [&] {
            const PlayerId me = auth(req);
            std::optional<SessionId> comp;
            if (req.has_param("competition")) {
                try {
                    comp = SessionId{std::stoull(req.get_param_value("competition"))};
                } catch (const std::exception&) {
                    throw ValidationError("bad competition id");
                }
            }
            send(res, 200, to_json(game.serve_riddle(me, lang_param(req, "lang"), comp)));
        });
    });

    srv.Post(R"(/api/riddle/(\d+)/answer)", [=, &game](const Request& req, Response& res) {
        guarded(res, [&] {
            const PlayerId me = auth(req);
            const json b = detail::body_of(req);
            send(res, 200, to_json(game.submit_answer(me, RiddleId{detail::path_id(req)}, field<std::string>(b, "choice"))));
        });
    });

    srv.Post("/api/pairs", [=, &game](const Request& req, Response& res) {
        guarded(res, [&] {
            const PlayerId me = auth(req);
            const json b = detail::body_of(req);
            auto lang = try_parse_language(field<std::string>(b, "lang"));
            if (!lang) throw ValidationError("unsupported language");
            auto r = game.propose_pair(me, *lang, field<std::string>(b, "word_a"), field<std::string>(b, "word_b"));
            if (r.accepted())
                send(res, 201, {{"pair_id", raw(*r.pair)}, {"accepted", true}});
            else
                detail::send_error(res, 422, "pair rejected", {{"accepted", false}, {"reasons", r.reasons}});
        });
    });

    srv.Get("/api/pairs/mine", [=, &game](const Request& req, Response& res) {
        guarded(res, [&] {
            json out = json::array();
            for (const auto& p : game.pairs_of(auth(req))) out.push_back(to_json(p, game.config().min_annotations));
            send(res, 200, out);
        });
    });

    srv.Get("/api/scores/me", [=, &game](const Request& req, Response& res) {
        guarded(res, [&] { send(res, 200, to_json(game.scores(auth(req)))); });
    });

    srv.Get("/api/leaderboard", [=, &game](const Request& req, Response& res) {
        guarded(res, [&] {
            auto lang = lang_param(req, "lang");
            if (!lang) throw ValidationError("missing lang");
            std::size_t limit = 10;
            if (req.has_param("limit")) {
                try {
                    const long long n = std::stoll(req.get_param_value("limit"));
                    if (n < 0) throw ValidationError("limit must be non-negative");
                    limit = static_cast<std::size_t>(std::min<long long>(n, 1000));
                } catch (const std::logic_error&) {
                    throw ValidationError("bad limit");
                }
            }
            json out = json::array();
            for (const auto& r : game.leaderboard(*lang, limit))
                out.push_back({{"username", r.username}, {"language", to_string(r.language)}, {"cracker_points", r.cracker_points}});
            send(res, 200, out);
        });
    });

    srv.Post("/api/friends", [=, &game](const Request& req, Response& res) {
        guarded(res, [&] {
            const PlayerId me = auth(req);
            const auto f = game.add_friend(me, field<std::string>(detail::body_of(req), "username"));
            send(res, 201, {{"username", f.username}, {"mutual", f.mutual}});
        });
    });

    srv.Get("/api/friends", [=, &game](const Request& req, Response& res) {
        guarded(res, [&] {
            json out = json::array();
            for (const auto& f : game.friends(auth(req))) out.push_back({{"username", f.username}, {"mutual", f.mutual}});
            send(res, 200, out);
        });
    });

    srv.Post("/api/competitions", [=, &game](const Request& req, Response& res) {
        guarded(res, [&] {
            const PlayerId me = auth(req);
            const json b = detail::body_of(req);
            const SessionId id = game.create_competition(me, field<std::vector<std::string>>(b, "friend_usernames"),
                                                         field<int>(b, "riddle_count"));
            send(res, 201, to_json(game.competition(me, id)));
        });
    });

    srv.Get(R"(/api/competitions/(\d+))", [=, &game](const Request& req, Response& res) {
        guarded(res, [&] { send(res, 200, to_json(game.competition(auth(req), SessionId{detail::path_id(req)}))); });
    });

    srv.Post(R"(/api/competitions/(\d+)/close)", [=, &game](const Request& req, Response& res) {
        guarded(res, [&] { send(res, 200, to_json(game.close_competition(auth(req), SessionId{detail::path_id(req)}))); });
    });

    srv.Get("/api/stats/summary", [&game](const Request&, Response& res) {
        guarded(res, [&] {
            const auto log = game.annotation_log();
            json j = to_json(breakdown(log));
            j["annotations"] = log.size();
            j["overall_success_percent"] = log.empty() ? json(nullptr) : json(overall_success(log));
            send(res, 200, j);
        });
    });

    srv.Get("/api/stats/histogram", [=, &game](const Request& req, Response& res) {
        guarded(res, [&] {
            std::size_t min = game.config().min_annotations, bins = game.config().histogram_bins;
            try {
                if (req.has_param("min")) min = std::stoul(req.get_param_value("min"));
                if (req.has_param("bins")) bins = std::stoul(req.get_param_value("bins"));
            } catch (const std::logic_error&) {
                throw ValidationError("bad histogram parameter");
            }
            send(res, 200, to_json(histogram(game.annotation_log(), min, bins)));
        });
    });
}

}  // namespace riddler::service
