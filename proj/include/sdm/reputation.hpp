#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sdm {

/// Tunables for the rating model. New actors start at the neutral prior;
/// the burst window quantifies "a very short span of time" for pairwise
/// transaction counting.
struct ReputationParams {
    double initial_score = 0.5;
    int collusion_exponent = 2;          // positive integer
    std::int64_t burst_window_seconds = 3600;
    bool credibility_uses_given_feedback = true; // false: use received tallies
};

/// Per-actor trading history backing the reputation score.
struct ReputationRecord {
    std::string actor;
    double score = 0.5;
    long long feedback_pos_given = 0;
    long long feedback_neg_given = 0;
    long long feedback_pos_received = 0;
    long long feedback_neg_received = 0;
    long long contracts_failed = 0;
    long long contracts_total = 0;
    double max_transaction_value = 0.0;  // nondecreasing
    std::int64_t last_request_time = 0;

    struct PairStats {
        long long burst_count = 0;       // transactions within the burst window
        std::int64_t last_time = 0;
    };
    std::map<std::string, PairStats> pair_history;
    int collusion_exponent = 2;          // stored for audit
};

/// One settled trade's rating message: both parties' feedback plus the
/// transaction value.
struct RatingEvent {
    std::string actor_i;
    std::string actor_j;
    double t_value = 0.0;        // > 0
    double feedback_i = 0.5;     // feedback received by actor_i, in (0,1)
    double feedback_j = 0.5;     // feedback received by actor_j, in (0,1)
    std::int64_t event_time = 0;
};

/// How much a rater's feedback counts, from the relative scores and the
/// rater's positive/negative feedback balance. Zero denominators yield 0.
double feedback_credibility(const ReputationRecord& rater, const ReputationRecord& ratee,
                            bool use_given_tallies = true);

/// Weight of the transaction relative to the heaviest seen; v_m is updated
/// with the current value before use, so the result is in (0,1].
double transaction_weight(double t_value, double v_m);

/// Discount for repeated interaction with the same counterparty; 1 on first
/// contact, decaying to 0 as the burst count grows.
double collusion_factor(long long pair_count, int exponent);

/// Multiplicative penalty for a violated agreement.
double violation_factor(long long contracts_failed, long long contracts_total);

/// Serialized per-actor store. Updates are deterministic; both directions of
/// a settlement are evaluated against the pre-settlement snapshot.
class ReputationStore {
  public:
    explicit ReputationStore(ReputationParams params = {});

    const ReputationParams& params() const { return params_; }

    /// Read-only view; creates nothing.
    std::optional<ReputationRecord> find(const std::string& actor) const;

    /// Record after a lookup-or-bootstrap.
    const ReputationRecord& get_or_create(const std::string& actor);

    /// One direction of a rating: the ratee's score moves toward the rater's
    /// feedback, scaled by credibility, transaction weight and collusion
    /// discount, then aged by the ratee's failure history. Returns the updated
    /// record.
    ReputationRecord apply_rating(const std::string& ratee, const std::string& rater,
                                  double t_value, double feedback, std::int64_t event_time);

    /// Both directions of one settlement, evaluated on a pre-event snapshot.
    void apply_rating_event(const RatingEvent& event);

    /// Agreement violated by the actor: failure counters first, then the
    /// violation factor scales the score.
    ReputationRecord apply_violation(const std::string& actor);

    std::vector<ReputationRecord> snapshot() const;

    nlohmann::json to_json() const;
    static ReputationStore from_json(const nlohmann::json& j);

  private:
    ReputationRecord apply_rating_against(const std::map<std::string, ReputationRecord>& base,
                                          const std::string& ratee, const std::string& rater,
                                          double t_value, double feedback,
                                          std::int64_t event_time);

    ReputationParams params_;
    std::map<std::string, ReputationRecord> records_;
};

void to_json(nlohmann::json& j, const ReputationRecord& r);
void from_json(const nlohmann::json& j, ReputationRecord& r);
void to_json(nlohmann::json& j, const RatingEvent& e);
void from_json(const nlohmann::json& j, RatingEvent& e);

} // namespace sdm
