#include "sdm/pricing.hpp"

#include <sstream>

namespace sdm {

double price_index(const PriceRecord& record) {
    return record.price / (record.quality_score + record.risk_score + 1.0);
}

std::size_t PriceLedger::record_price(const PriceRecord& record) {
    if (!(record.price > 0.0))
        throw std::invalid_argument("record_price: price must be positive");
    if (record.quality_score < 0.0 || record.quality_score > 1.0)
        throw std::invalid_argument("record_price: quality score outside [0,1]");
    if (record.risk_score < 0.0 || record.risk_score > 1.0)
        throw std::invalid_argument("record_price: risk score outside [0,1]");
    const auto it = last_timestamp_.find(record.data_type);
    if (it != last_timestamp_.end() && record.timestamp < it->second)
        throw std::invalid_argument("record_price: timestamp regresses for type " +
                                    std::to_string(record.data_type));
    last_timestamp_[record.data_type] = record.timestamp;
    records_.push_back(record);
    return records_.size() - 1;
}

std::optional<double> PriceLedger::base_price(DataTypeId type, const TimeWindow& window) const {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& r : records_) {
        if (r.data_type != type || !window.contains(r.timestamp)) continue;
        sum += price_index(r);
        ++count;
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

PriceQuote PriceLedger::quote(DataTypeId type, const TimeWindow& window, double qs, double rs,
                              double beta, double exe_fee) const {
    if (qs < 0.0 || qs > 1.0 || rs < 0.0 || rs > 1.0 || beta < 0.0 || beta > 1.0)
        throw std::invalid_argument("quote: qs, rs and beta must lie in [0,1]");
    const auto base = base_price(type, window);
    if (!base)
        throw std::runtime_error("quote: no price records for type " + std::to_string(type) +
                                 " in the requested window");
    std::size_t count = 0;
    for (const auto& r : records_)
        if (r.data_type == type && window.contains(r.timestamp)) ++count;

    PriceQuote q;
    q.base_price = *base;
    q.final_price = (1.0 + qs + rs) * (*base) + beta * exe_fee;
    q.qs = qs;
    q.rs = rs;
    q.beta = beta;
    q.exe_fee = exe_fee;
    q.window = window;
    q.sample_size = count;
    return q;
}

std::string PriceLedger::serialize() const {
    std::ostringstream out;
    for (const auto& r : records_) out << nlohmann::json(r).dump() << "\n";
    return out.str();
}

PriceLedger PriceLedger::parse(const std::string& text) {
    PriceLedger ledger;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ledger.record_price(nlohmann::json::parse(line).get<PriceRecord>());
    }
    return ledger;
}

double quality_score_from_level(int quality_level) {
    if (!is_quality_level(quality_level))
        throw std::invalid_argument("quality_score_from_level: not a quality level");
    return static_cast<double>(quality_level) / 100.0;
}

void to_json(nlohmann::json& j, const PriceRecord& r) {
    j = nlohmann::json{{"timestamp", r.timestamp},
                       {"data_type", r.data_type},
                       {"price", r.price},
                       {"quality_score", r.quality_score},
                       {"risk_score", r.risk_score}};
}

void from_json(const nlohmann::json& j, PriceRecord& r) {
    r.timestamp = j.at("timestamp").get<std::int64_t>();
    r.data_type = j.at("data_type").get<DataTypeId>();
    r.price = j.at("price").get<double>();
    r.quality_score = j.at("quality_score").get<double>();
    r.risk_score = j.at("risk_score").get<double>();
}

} // namespace sdm
