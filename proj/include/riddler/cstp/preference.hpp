#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riddler/cstp/template.hpp"
#include "riddler/error.hpp"

namespace riddler::cstp {

inline constexpr double kTieTolerance = 1e-9;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

enum class Winner { first, second, tie };
enum class Rule { direct, bayes, membership, autoregressive };

inline std::string_view to_string(Winner w) {
    switch (w) {
        case Winner::first: return "first";
        case Winner::second: return "second";
        case Winner::tie: return "tie";
    }
    return "?";
}

inline std::string_view to_string(Rule r) {
    switch (r) {
        case Rule::direct: return "direct";
        case Rule::bayes: return "bayes";
        case Rule::membership: return "membership";
        case Rule::autoregressive: return "autoregressive";
    }
    return "?";
}

// Scores are natural logs of the compared quantities.
struct Preference {
    Winner winner = Winner::tie;
    double score_first = 0;
    double score_second = 0;
    Rule rule = Rule::direct;
};

inline Winner flip(Winner w) {
    return w == Winner::first ? Winner::second : w == Winner::second ? Winner::first : Winner::tie;
}

// Two hard zeros tie; otherwise values closer than the tolerance tie.
inline Winner compare_log(double a, double b, double tolerance = kTieTolerance) {
    if (std::isnan(a) || std::isnan(b)) throw OracleContractError("oracle returned NaN");
    if (a == b) return Winner::tie;
    if (std::isinf(a) || std::isinf(b)) return a > b ? Winner::first : Winner::second;
    if (std::fabs(a - b) < tolerance) return Winner::tie;
    return a > b ? Winner::first : Winner::second;
}

inline double log_of(double p) {
    if (std::isnan(p) || p < 0) throw OracleContractError("oracle returned a negative or NaN score");
    return p == 0 ? kNegInf : std::log(p);
}

// ---------------------------------------------------------------- capabilities
// Unknown candidate terms raise UnknownTermError.

// Scores P(t | context) up to a factor that depends only on the template.
class Conditional {
public:
    virtual ~Conditional() = default;
    virtual double log_score(std::string_view term, const ContextTemplate& c) const = 0;
};

// Models the context given the term, plus a prior over terms.
class ContextGenerative {
public:
    virtual ~ContextGenerative() = default;
    virtual double log_likelihood(const ContextTemplate& c, std::string_view term) const = 0;
    virtual double log_prior(std::string_view term) const = 0;
};

// Probability that the term belongs in the context; not normalized over terms.
class Membership {
public:
    virtual ~Membership() = default;
    virtual double membership(std::string_view term, const ContextTemplate& c) const = 0;
};

// Next-token probability given everything before it.
class Autoregressive {
public:
    virtual ~Autoregressive() = default;
    virtual double log_next(std::span<const std::string> history, std::string_view token) const = 0;
    // Throws UnknownTermError for candidates the model cannot place in the slot.
    virtual void require_term(std::string_view) const {}
};

// ---------------------------------------------------------------- rules

inline Preference make_preference(double a, double b, Rule rule, double tolerance = kTieTolerance) {
    return {compare_log(a, b, tolerance), a, b, rule};
}

inline Preference prefer_direct(const Conditional& o, const ContextTemplate& c, std::string_view t1,
                                std::string_view t2, double tolerance = kTieTolerance) {
    return make_preference(o.log_score(t1, c), o.log_score(t2, c), Rule::direct, tolerance);
}

// The evidence term P(c) is shared by both candidates and never computed.
inline Preference prefer_bayes(const ContextGenerative& o, const ContextTemplate& c, std::string_view t1,
                               std::string_view t2, double tolerance = kTieTolerance) {
    const double p1 = o.log_prior(t1);
    const double p2 = o.log_prior(t2);
    if (p1 == kNegInf && p2 == kNegInf) throw DegenerateComparisonError("both terms have zero prior");
    return make_preference(o.log_likelihood(c, t1) + p1, o.log_likelihood(c, t2) + p2, Rule::bayes, tolerance);
}

// Renormalizing over the vocabulary divides both scores by the same positive
// sum, so raw memberships are compared.
inline Preference prefer_membership(const Membership& o, const ContextTemplate& c, std::string_view t1,
                                    std::string_view t2, double tolerance = kTieTolerance) {
    return make_preference(log_of(o.membership(t1, c)), log_of(o.membership(t2, c)), Rule::membership, tolerance);
}

enum class Continuation {
    final_token,  // only the last suffix token given everything before it
    full,         // every suffix token
};

inline double continuation_score(const Autoregressive& o, const ContextTemplate& c, std::string_view term,
                                 Continuation mode) {
    if (c.suffix.empty()) throw UnsupportedTemplateError("slot is the last token; nothing follows it");
    o.require_term(term);
    std::vector<std::string> history = c.prefix;
    history.emplace_back(term);
    double total = 0;
    for (std::size_t j = 0; j < c.suffix.size(); ++j) {
        const bool scored = mode == Continuation::full || j + 1 == c.suffix.size();
        if (scored) {
            const double lp = o.log_next(history, c.suffix[j]);
            if (std::isnan(lp) || lp > 1e-9) throw OracleContractError("next-token log probability above zero");
            total += lp;
        }
        history.push_back(c.suffix[j]);
    }
    return total;
}

inline Preference prefer_autoregressive(const Autoregressive& o, const ContextTemplate& c, std::string_view t1,
                                        std::string_view t2, Continuation mode = Continuation::final_token,
                                        double tolerance = kTieTolerance) {
    if (c.suffix.empty()) throw UnsupportedTemplateError("slot is the last token; nothing follows it");
    return make_preference(continuation_score(o, c, t1, mode), continuation_score(o, c, t2, mode),
                           Rule::autoregressive, tolerance);
}

// ---------------------------------------------------------------- judges

// One comparison rule bound to an oracle.
class Judge {
public:
    virtual ~Judge() = default;
    virtual Preference prefer(const ContextTemplate& c, std::string_view t1, std::string_view t2) const = 0;
};

class DirectJudge final : public Judge {
public:
    explicit DirectJudge(const Conditional& o, double tolerance = kTieTolerance) : o_(o), tol_(tolerance) {}
    Preference prefer(const ContextTemplate& c, std::string_view t1, std::string_view t2) const override {
        return prefer_direct(o_, c, t1, t2, tol_);
    }

private:
    const Conditional& o_;
    double tol_;
};

class BayesJudge final : public Judge {
public:
    explicit BayesJudge(const ContextGenerative& o, double tolerance = kTieTolerance) : o_(o), tol_(tolerance) {}
    Preference prefer(const ContextTemplate& c, std::string_view t1, std::string_view t2) const override {
        return prefer_bayes(o_, c, t1, t2, tol_);
    }

private:
    const ContextGenerative& o_;
    double tol_;
};

class MembershipJudge final : public Judge {
public:
    explicit MembershipJudge(const Membership& o, double tolerance = kTieTolerance) : o_(o), tol_(tolerance) {}
    Preference prefer(const ContextTemplate& c, std::string_view t1, std::string_view t2) const override {
        return prefer_membership(o_, c, t1, t2, tol_);
    }

private:
    const Membership& o_;
    double tol_;
};

class AutoregressiveJudge final : public Judge {
public:
    explicit AutoregressiveJudge(const Autoregressive& o, Continuation mode = Continuation::final_token,
                                 double tolerance = kTieTolerance)
        : o_(o), mode_(mode), tol_(tolerance) {}
    Preference prefer(const ContextTemplate& c, std::string_view t1, std::string_view t2) const override {
        return prefer_autoregressive(o_, c, t1, t2, mode_, tol_);
    }

private:
    const Autoregressive& o_;
    Continuation mode_;
    double tol_;
};

// ---------------------------------------------------------------- aggregation

// Majority over per-sentence winners; ties abstain and an even split is a tie.
inline Winner majority_vote(std::span<const Winner> votes) {
    int first = 0, second = 0;
    for (Winner w : votes) {
        if (w == Winner::first) ++first;
        if (w == Winner::second) ++second;
    }
    return first > second ? Winner::first : second > first ? Winner::second : Winner::tie;
}

}  // namespace riddler::cstp
