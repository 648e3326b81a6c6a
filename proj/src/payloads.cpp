#include "tweetscope/payloads.hpp"

#include <set>

namespace tweetscope {

using nlohmann::json;

json series_json(const Series& series) {
    json points = json::array();
    for (const auto& p : series.points) {
        json point{{"period", p.period}, {"count", p.count}};
        if (series.metric == Metric::Sentiment) {
            if (p.sentiment) {
                point["count"] = p.sentiment->count;
                point["mean"] = p.sentiment->mean;
                point["positivity"] = p.sentiment->positivity;
                point["negativity"] = p.sentiment->negativity;
            } else {
                point["mean"] = nullptr;
                point["positivity"] = nullptr;
                point["negativity"] = nullptr;
            }
        } else if (series.metric == Metric::Emotions) {
            for (std::size_t e = 0; e < kNumEmotions; ++e) {
                const std::string name(kEmotionNames[e]);
                point[name] = p.emotions ? json(p.emotions->means[e]) : json(nullptr);
            }
            if (p.emotions) {
                point["count"] = p.emotions->count;
            }
        }
        points.push_back(std::move(point));
    }
    return json{{"metric", std::string(to_string(series.metric))},
                {"granularity", std::string(to_string(series.granularity))},
                {"from", series.from},
                {"to", series.to},
                {"country", series.country ? json(*series.country) : json(nullptr)},
                {"points", std::move(points)}};
}

json topics_json(const std::string& week, const WeekTopics& topics, std::size_t n_words) {
    json rows = json::array();
    for (std::size_t k = 0; k < topics.topics.size(); ++k) {
        json words = json::array();
        const auto& list = topics.topics[k];
        for (std::size_t i = 0; i < list.size() && i < n_words; ++i) {
            words.push_back(json{{"term", list[i].first}, {"p", list[i].second}});
        }
        rows.push_back(json{{"topic", k}, {"words", std::move(words)}});
    }
    return json{{"week", week},
                {"n_words", n_words},
                {"num_docs", topics.num_docs},
                {"seed", topics.config.seed},
                {"topics", std::move(rows)}};
}

json terms_json(std::span<const std::string> phrases, std::span<const ControversyHit> hits) {
    auto breakdown_json = [](const CountryBreakdown& b) {
        return json{{"counts", b.counts}, {"fractions", b.fractions}};
    };
    json rows = json::array();
    for (const auto& phrase : phrases) {
        std::vector<ControversyHit> mine;
        for (const auto& h : hits) {
            if (h.term == phrase) mine.push_back(h);
        }
        rows.push_back(json{{"term", phrase},
                            {"total_hits", mine.size()},
                            {"breakdown", breakdown_json(country_breakdown(mine))}});
    }
    std::set<std::string_view> tweets;
    for (const auto& h : hits) {
        tweets.insert(h.tweet_id);
    }
    return json{{"terms", std::move(rows)},
                {"overall",
                 {{"total_hits", hits.size()},
                  {"tweets", tweets.size()},
                  {"breakdown", breakdown_json(country_breakdown(hits))}}}};
}

json cooccurrence_json(const CooccurrenceTable& table, std::size_t top_n) {
    json words = json::array();
    for (std::size_t i = 0; i < table.counts.size() && i < top_n; ++i) {
        words.push_back(json{{"term", table.counts[i].first}, {"count", table.counts[i].second}});
    }
    return json{{"term", table.term},
                {"total_hits", table.total_hits},
                {"top_n", top_n},
                {"words", std::move(words)}};
}

json meta_json(const AggregateSnapshot& snapshot, const WeeklyTopics* topics) {
    std::set<std::string> days;
    std::set<std::string> weeks;
    std::set<std::string> countries;
    for (const auto& [key, count] : snapshot.volume) {
        (key.granularity == Granularity::Day ? days : weeks).insert(key.period);
        if (key.country && *key.country != kUnknownCountryBucket) {
            countries.insert(*key.country);
        }
    }
    json topic_weeks = json::array();
    if (topics != nullptr) {
        for (const auto& [week, wt] : topics->weeks) {
            topic_weeks.push_back(week);
        }
    }
    json range = nullptr;
    if (!days.empty()) {
        range = json{{"from", *days.begin()}, {"to", *days.rbegin()}};
    }
    return json{{"corpus_id", snapshot.corpus_id},
                {"built_at", snapshot.built_at},
                {"date_range", std::move(range)},
                {"countries", countries},
                {"weeks", weeks},
                {"topic_weeks", std::move(topic_weeks)}};
}

json error_json(std::string_view code, std::string_view message) {
    return json{{"error", {{"code", std::string(code)}, {"message", std::string(message)}}}};
}

}  // namespace tweetscope
