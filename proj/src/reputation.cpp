#include "sdm/reputation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdm {

double feedback_credibility(const ReputationRecord& rater, const ReputationRecord& ratee,
                            bool use_given_tallies) {
    const double score_sum = rater.score + ratee.score;
    if (score_sum <= 0.0) return 0.0;
    const long long pos = use_given_tallies ? rater.feedback_pos_given : rater.feedback_pos_received;
    const long long neg = use_given_tallies ? rater.feedback_neg_given : rater.feedback_neg_received;
    if (pos + neg <= 0) return 0.0;
    return (rater.score / score_sum) *
           (static_cast<double>(pos) / static_cast<double>(pos + neg));
}

double transaction_weight(double t_value, double v_m) {
    if (!(t_value > 0.0))
        throw std::invalid_argument("transaction_weight: transaction value must be positive");
    if (!(v_m > 0.0))
        throw std::invalid_argument("transaction_weight: v_m must be positive (update it first)");
    return t_value / v_m;
}

double collusion_factor(long long pair_count, int exponent) {
    if (pair_count < 1)
        throw std::invalid_argument("collusion_factor: first interaction counts as 1");
    if (exponent < 1)
        throw std::invalid_argument("collusion_factor: exponent must be a positive integer");
    return std::pow(1.0 / static_cast<double>(pair_count), exponent);
}

double violation_factor(long long contracts_failed, long long contracts_total) {
    if (contracts_failed < 0 || contracts_total < 0 || contracts_failed > contracts_total)
        throw std::invalid_argument("violation_factor: need 0 <= failed <= total");
    const double ratio = contracts_total == 0
                             ? 0.0
                             : static_cast<double>(contracts_failed) / static_cast<double>(contracts_total);
    return 2.0 - std::pow(2.0, ratio);
}

ReputationStore::ReputationStore(ReputationParams params) : params_(params) {
    if (params_.collusion_exponent < 1)
        throw std::invalid_argument("ReputationStore: collusion exponent must be positive");
}

std::optional<ReputationRecord> ReputationStore::find(const std::string& actor) const {
    const auto it = records_.find(actor);
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

const ReputationRecord& ReputationStore::get_or_create(const std::string& actor) {
    auto it = records_.find(actor);
    if (it == records_.end()) {
        ReputationRecord rec;
        rec.actor = actor;
        rec.score = params_.initial_score;
        rec.collusion_exponent = params_.collusion_exponent;
        it = records_.emplace(actor, std::move(rec)).first;
    }
    return it->second;
}

ReputationRecord ReputationStore::apply_rating_against(
    const std::map<std::string, ReputationRecord>& base, const std::string& ratee_id,
    const std::string& rater_id, double t_value, double feedback, std::int64_t event_time) {
    if (!(feedback > 0.0 && feedback < 1.0))
        throw std::invalid_argument("apply_rating: feedback must lie strictly inside (0,1)");
    if (!(t_value > 0.0))
        throw std::invalid_argument("apply_rating: transaction value must be positive");
    if (ratee_id == rater_id)
        throw std::invalid_argument("apply_rating: an actor cannot rate itself");

    get_or_create(ratee_id);
    get_or_create(rater_id);

    const auto base_of = [&](const std::string& id) -> ReputationRecord {
        const auto it = base.find(id);
        if (it != base.end()) return it->second;
        ReputationRecord rec;
        rec.actor = id;
        rec.score = params_.initial_score;
        rec.collusion_exponent = params_.collusion_exponent;
        return rec;
    };
    const ReputationRecord ratee_base = base_of(ratee_id);
    const ReputationRecord rater_base = base_of(rater_id);

    ReputationRecord& ratee = records_.at(ratee_id);
    ReputationRecord& rater = records_.at(rater_id);

    // Maximum transaction value, updated before use so the weight stays <= 1.
    const double v_m = std::max(ratee_base.max_transaction_value, t_value);
    ratee.max_transaction_value = std::max(ratee.max_transaction_value, t_value);

    // Pairwise burst count: consecutive events inside the window accumulate,
    // a gap resets the count to 1.
    long long pair_count = 1;
    const auto pair_it = ratee_base.pair_history.find(rater_id);
    if (pair_it != ratee_base.pair_history.end() &&
        event_time - pair_it->second.last_time <= params_.burst_window_seconds)
        pair_count = pair_it->second.burst_count + 1;
    ratee.pair_history[rater_id] = {pair_count, event_time};

    ratee.contracts_total += 1;

    const double fc = feedback_credibility(rater_base, ratee_base,
                                           params_.credibility_uses_given_feedback);
    const double tv = transaction_weight(t_value, v_m);
    const double ca = collusion_factor(pair_count, params_.collusion_exponent);
    const double alpha = std::clamp((fc + tv) * ca, 0.0, 1.0);

    const long long c_total = ratee_base.contracts_total + 1;
    const long long c_fail = ratee_base.contracts_failed;
    const double aging = std::exp(-static_cast<double>(c_fail) / static_cast<double>(c_total));
    const double updated = ((1.0 - alpha) * ratee_base.score + alpha * feedback) * aging;
    ratee.score = std::clamp(updated, 0.0, 1.0);

    if (feedback >= 0.5) {
        rater.feedback_pos_given += 1;
        ratee.feedback_pos_received += 1;
    } else {
        rater.feedback_neg_given += 1;
        ratee.feedback_neg_received += 1;
    }
    ratee.last_request_time = event_time;
    rater.last_request_time = event_time;
    return ratee;
}

ReputationRecord ReputationStore::apply_rating(const std::string& ratee, const std::string& rater,
                                               double t_value, double feedback,
                                               std::int64_t event_time) {
    return apply_rating_against(records_, ratee, rater, t_value, feedback, event_time);
}

void ReputationStore::apply_rating_event(const RatingEvent& event) {
    const std::map<std::string, ReputationRecord> snapshot = records_;
    apply_rating_against(snapshot, event.actor_j, event.actor_i, event.t_value, event.feedback_j,
                         event.event_time);
    apply_rating_against(snapshot, event.actor_i, event.actor_j, event.t_value, event.feedback_i,
                         event.event_time);
}

ReputationRecord ReputationStore::apply_violation(const std::string& actor) {
    get_or_create(actor);
    ReputationRecord& rec = records_.at(actor);
    rec.contracts_failed += 1;
    rec.contracts_total += 1;
    const double vf = violation_factor(rec.contracts_failed, rec.contracts_total);
    rec.score = std::clamp(rec.score * vf, 0.0, 1.0);
    return rec;
}

std::vector<ReputationRecord> ReputationStore::snapshot() const {
    std::vector<ReputationRecord> out;
    out.reserve(records_.size());
    for (const auto& [_, rec] : records_) out.push_back(rec);
    return out;
}

nlohmann::json ReputationStore::to_json() const {
    nlohmann::json actors = nlohmann::json::object();
    for (const auto& [id, rec] : records_) actors[id] = rec;
    return nlohmann::json{{"params",
                           {{"initial_score", params_.initial_score},
                            {"collusion_exponent", params_.collusion_exponent},
                            {"burst_window_seconds", params_.burst_window_seconds},
                            {"credibility_uses_given_feedback", params_.credibility_uses_given_feedback}}},
                          {"actors", actors}};
}

ReputationStore ReputationStore::from_json(const nlohmann::json& j) {
    ReputationParams params;
    const auto& p = j.at("params");
    params.initial_score = p.at("initial_score").get<double>();
    params.collusion_exponent = p.at("collusion_exponent").get<int>();
    params.burst_window_seconds = p.at("burst_window_seconds").get<std::int64_t>();
    params.credibility_uses_given_feedback = p.at("credibility_uses_given_feedback").get<bool>();
    ReputationStore store(params);
    for (const auto& [id, rec] : j.at("actors").items())
        store.records_[id] = rec.get<ReputationRecord>();
    return store;
}

void to_json(nlohmann::json& j, const ReputationRecord& r) {
    nlohmann::json pairs = nlohmann::json::object();
    for (const auto& [id, stats] : r.pair_history)
        pairs[id] = {{"burst_count", stats.burst_count}, {"last_time", stats.last_time}};
    j = nlohmann::json{{"actor", r.actor},
                       {"score", r.score},
                       {"feedback_pos_given", r.feedback_pos_given},
                       {"feedback_neg_given", r.feedback_neg_given},
                       {"feedback_pos_received", r.feedback_pos_received},
                       {"feedback_neg_received", r.feedback_neg_received},
                       {"contracts_failed", r.contracts_failed},
                       {"contracts_total", r.contracts_total},
                       {"max_transaction_value", r.max_transaction_value},
                       {"last_request_time", r.last_request_time},
                       {"pair_history", pairs},
                       {"collusion_exponent", r.collusion_exponent}};
}

void from_json(const nlohmann::json& j, ReputationRecord& r) {
    r.actor = j.at("actor").get<std::string>();
    r.score = j.at("score").get<double>();
    r.feedback_pos_given = j.at("feedback_pos_given").get<long long>();
    r.feedback_neg_given = j.at("feedback_neg_given").get<long long>();
    r.feedback_pos_received = j.at("feedback_pos_received").get<long long>();
    r.feedback_neg_received = j.at("feedback_neg_received").get<long long>();
    r.contracts_failed = j.at("contracts_failed").get<long long>();
    r.contracts_total = j.at("contracts_total").get<long long>();
    r.max_transaction_value = j.at("max_transaction_value").get<double>();
    r.last_request_time = j.at("last_request_time").get<std::int64_t>();
    r.pair_history.clear();
    for (const auto& [id, stats] : j.at("pair_history").items())
        r.pair_history[id] = {stats.at("burst_count").get<long long>(),
                              stats.at("last_time").get<std::int64_t>()};
    r.collusion_exponent = j.at("collusion_exponent").get<int>();
}

void to_json(nlohmann::json& j, const RatingEvent& e) {
    j = nlohmann::json{{"actor_i", e.actor_i}, {"actor_j", e.actor_j},
                       {"t_value", e.t_value}, {"feedback_i", e.feedback_i},
                       {"feedback_j", e.feedback_j}, {"event_time", e.event_time}};
}

void from_json(const nlohmann::json& j, RatingEvent& e) {
    e.actor_i = j.at("actor_i").get<std::string>();
    e.actor_j = j.at("actor_j").get<std::string>();
    e.t_value = j.at("t_value").get<double>();
    e.feedback_i = j.at("feedback_i").get<double>();
    e.feedback_j = j.at("feedback_j").get<double>();
    e.event_time = j.at("event_time").get<std::int64_t>();
}

} // namespace sdm
