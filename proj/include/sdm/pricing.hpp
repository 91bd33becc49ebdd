#pragma once

#include "sdm/model.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sdm {

/// One traded-price observation in the competition-pricing ledger.
struct PriceRecord {
    std::int64_t timestamp = 0; // epoch seconds
    DataTypeId data_type = 0;
    double price = 0.0;         // > 0
    double quality_score = 0.0; // [0,1]
    double risk_score = 0.0;    // [0,1]
};

/// Half-open observation window [start, end).
struct TimeWindow {
    std::int64_t start = 0;
    std::int64_t end = 0;
    bool contains(std::int64_t t) const { return t >= start && t < end; }
};

struct PriceQuote {
    double base_price = 0.0;
    double final_price = 0.0;
    double qs = 0.0;
    double rs = 0.0;
    double beta = 0.0;
    double exe_fee = 0.0;
    TimeWindow window;
    std::size_t sample_size = 0; // records averaged into the base price
};

/// Price observation discounted by how much of it is explained by quality
/// and privacy-risk premiums.
double price_index(const PriceRecord& record);

/// Append-only, single-writer price ledger; per-type slices stay
/// timestamp-ordered, equal timestamps keep arrival order.
class PriceLedger {
  public:
    /// Appends after validation; returns the record's ledger position.
    std::size_t record_price(const PriceRecord& record);

    const std::vector<PriceRecord>& records() const { return records_; }

    /// Mean price index over the window's records for the type; absent when
    /// the window holds no records ("no market data" is not "price zero").
    std::optional<double> base_price(DataTypeId type, const TimeWindow& window) const;

    /// Final price composition; throws std::runtime_error when the window has
    /// no records for the type.
    PriceQuote quote(DataTypeId type, const TimeWindow& window, double qs, double rs,
                     double beta, double exe_fee) const;

    /// Newline-delimited JSON records.
    std::string serialize() const;
    static PriceLedger parse(const std::string& text);

  private:
    std::vector<PriceRecord> records_;
    std::map<DataTypeId, std::int64_t> last_timestamp_;
};

/// Default quality-score mapping: the demanded quality level scaled onto
/// [0,1]. Weights beyond the single level are left to callers.
double quality_score_from_level(int quality_level);

void to_json(nlohmann::json& j, const PriceRecord& r);
void from_json(const nlohmann::json& j, PriceRecord& r);

} // namespace sdm
