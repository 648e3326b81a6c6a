#pragma once

#include "tweetscope/aggregate.hpp"
#include "tweetscope/controversy.hpp"
#include "tweetscope/ingest.hpp"
#include "tweetscope/topics.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace tweetscope {

/// Fixed artifact names inside a data directory.
namespace layout {
inline constexpr const char* kCorpusDir = "corpus";
inline constexpr const char* kCorpusStats = "corpus/stats.json";
inline constexpr const char* kSnapshot = "snapshot.json";
inline constexpr const char* kTopics = "topics.json";
inline constexpr const char* kControversy = "controversy.json";
inline constexpr const char* kManifestDir = "manifests";
}  // namespace layout

/// Writes corpus/<week>.jsonl files plus corpus/stats.json. Returns the files
/// written. Any previous corpus directory is replaced.
std::vector<std::filesystem::path> write_corpus(const std::filesystem::path& dir,
                                                const Corpus& corpus);

/// Throws DataError("no processed corpus found ...") when the directory holds
/// no ingested corpus.
Corpus read_corpus(const std::filesystem::path& dir);

bool has_corpus(const std::filesystem::path& dir);

void write_topics(const std::filesystem::path& path, const WeeklyTopics& topics,
                  bool include_matrices = false);
WeeklyTopics read_topics(const std::filesystem::path& path);

struct ControversyResults {
    std::vector<std::string> phrases;
    std::vector<ControversyHit> hits;
    std::map<std::string, CooccurrenceTable> cooccurrence;  ///< untruncated, by phrase
};

ControversyResults analyze_controversy(const Corpus& corpus, const TermList& terms,
                                       const StopwordSet& stopwords);

void write_controversy(const std::filesystem::path& path, const ControversyResults& results);
ControversyResults read_controversy(const std::filesystem::path& path);

/// Write text through a temp file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace tweetscope
