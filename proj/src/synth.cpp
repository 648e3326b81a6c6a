#include "tweetscope/synth.hpp"

#include "tweetscope/artifacts.hpp"
#include "tweetscope/calendar.hpp"
#include "tweetscope/random.hpp"

#include <json.hpp>

#include <array>
#include <random>
#include <string_view>

namespace tweetscope {

namespace {

constexpr std::array<std::string_view, 24> kFiller = {
    "people",  "today",  "news",     "update",   "city",     "government",
    "health",  "masks",  "testing",  "cases",    "hospital", "school",
    "work",    "family", "store",    "data",     "report",   "world",
    "doctors", "travel", "market",   "online",   "nurses",   "groceries"};

constexpr std::array<std::string_view, 10> kPositive = {
    "good", "great", "happy", "hope", "thank", "love", "safe", "support", "strong", "proud"};

constexpr std::array<std::string_view, 10> kNegative = {
    "bad", "scared", "worried", "fear", "panic", "crisis", "sad", "terrible", "awful", "angry"};

constexpr std::array<std::string_view, 8> kGlue = {"the", "is", "in", "and", "of", "to", "for", "with"};

constexpr std::array<std::string_view, 4> kControversyForms = {
    "chinese virus", "#WuhanVirus", "kung flu", "wuhan virus"};

constexpr std::array<std::string_view, 4> kControversyContext = {
    "#chinaliedpeopledied", "racist", "#chinamustexplain", "blame"};

constexpr std::array<std::string_view, 5> kCountries = {"US", "GB", "IN", "AU", "CA"};
constexpr std::array<std::string_view, 3> kOtherControversyCountries = {"GB", "AU", "IN"};

constexpr std::array<std::string_view, 3> kForeign = {
    "le virus est partout dans la ville et nous restons chez nous",
    "el virus se propaga por la ciudad y todos estamos en casa",
    "das virus ist in der stadt und wir bleiben zu hause"};

constexpr std::array<std::string_view, 12> kMonthNames = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
constexpr std::array<std::string_view, 7> kDayNames = {"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};

template <std::size_t N>
std::string_view pick(std::mt19937_64& rng, const std::array<std::string_view, N>& words) {
    return words[uniform_index(rng, N)];
}

std::string twitter_time(Timestamp ts) {
    const auto day = std::chrono::floor<std::chrono::days>(ts);
    const Date date{day};
    const std::chrono::hh_mm_ss tod{ts - day};
    const unsigned wd = std::chrono::weekday{day}.iso_encoding();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%s %s %02u %02d:%02d:%02d +0000 %04d",
                  std::string(kDayNames[wd - 1]).c_str(),
                  std::string(kMonthNames[static_cast<unsigned>(date.month()) - 1]).c_str(),
                  static_cast<unsigned>(date.day()), static_cast<int>(tod.hours().count()),
                  static_cast<int>(tod.minutes().count()), static_cast<int>(tod.seconds().count()),
                  static_cast<int>(date.year()));
    return buf;
}

}  // namespace

std::vector<PlantedTheme> planted_themes() {
    return {
        PlantedTheme{1, "lockdown", {"quarantine", "isolation", "curfew", "stayhome"}},
        PlantedTheme{3, "baltimore", {"gunfire", "police", "downtown", "investigation"}},
    };
}

std::vector<std::string> generate_synthetic_tweets(const SynthOptions& options) {
    std::mt19937_64 rng(options.seed);
    const auto themes = planted_themes();
    const IsoWeek first{options.start_year, options.start_week};
    std::vector<std::string> lines;
    lines.reserve(options.num_tweets);
    std::size_t controversy_count = 0;

    for (std::size_t i = 0; i < options.num_tweets; ++i) {
        const std::size_t week_offset = uniform_index(rng, options.num_weeks);
        const auto monday = first.monday() + std::chrono::days{7 * static_cast<long>(week_offset)};
        const Timestamp created =
            monday + std::chrono::seconds{static_cast<long long>(uniform_index(rng, 7 * 86400))};

        nlohmann::json record;
        record["id"] = std::to_string(1237000000000000000ULL + i);
        record["created_at"] =
            uniform_unit(rng) < 0.05 ? twitter_time(created) : format_timestamp(created);
        record["user_id"] = "u" + std::to_string(uniform_index(rng, 500));
        record["is_retweet"] = uniform_unit(rng) < 0.10;

        if (uniform_unit(rng) < options.foreign_rate) {
            record["text"] = std::string(pick(rng, kForeign));
            record["lang"] = uniform_index(rng, 2) == 0 ? "fr" : "es";
            record["country"] = "FR";
            lines.push_back(record.dump());
            continue;
        }

        std::vector<std::string> words;
        const std::size_t filler = 4 + uniform_index(rng, 5);
        for (std::size_t f = 0; f < filler; ++f) {
            words.emplace_back(pick(rng, kFiller));
            if (uniform_unit(rng) < 0.5) {
                words.emplace_back(pick(rng, kGlue));
            }
        }

        const double negative_p = week_offset == options.negative_week_offset ? 0.80 : 0.35;
        words.emplace_back(uniform_unit(rng) < negative_p ? pick(rng, kNegative) : pick(rng, kPositive));

        for (const auto& theme : themes) {
            if (theme.week_offset == week_offset && uniform_unit(rng) < options.theme_rate) {
                words.push_back(theme.signature);
                for (std::size_t t = 0; t < 2; ++t) {
                    words.push_back(theme.words[uniform_index(rng, theme.words.size())]);
                }
            }
        }

        std::optional<std::string> country;
        if (uniform_unit(rng) < options.controversy_rate) {
            words.emplace_back(pick(rng, kControversyForms));
            words.emplace_back(pick(rng, kControversyContext));
            // Deterministic split keeps the US share exact up to rounding.
            const std::size_t slot = controversy_count++ % 10;
            if (static_cast<double>(slot) < options.us_share * 10.0) {
                country = "US";
            } else if (slot < 9) {
                country = std::string(pick(rng, kOtherControversyCountries));
            }
        } else if (uniform_unit(rng) < 0.9) {
            country = std::string(pick(rng, kCountries));
        }

        // shuffle body, keep glue words natural enough for the stopword check
        for (std::size_t k = words.size(); k > 1; --k) {
            std::swap(words[k - 1], words[uniform_index(rng, k)]);
        }
        std::string text;
        for (const auto& w : words) {
            if (!text.empty()) text += ' ';
            text += w;
        }
        if (uniform_unit(rng) < 0.2) {
            text += " https://t.co/x" + std::to_string(uniform_index(rng, 100000));
        }
        if (uniform_unit(rng) < 0.2) {
            text = "@user" + std::to_string(uniform_index(rng, 1000)) + " " + text;
        }
        if (uniform_unit(rng) < 0.3) {
            text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
        }

        record["text"] = text;
        if (uniform_unit(rng) >= options.untagged_lang_rate) {
            record["lang"] = "en";
        }
        record["country"] = country ? nlohmann::json(*country) : nlohmann::json(nullptr);
        lines.push_back(record.dump());
    }
    return lines;
}

void write_synthetic_tweets(const std::filesystem::path& path, const SynthOptions& options) {
    std::string content;
    for (const auto& line : generate_synthetic_tweets(options)) {
        content += line;
        content += '\n';
    }
    write_file_atomic(path, content);
}

}  // namespace tweetscope
