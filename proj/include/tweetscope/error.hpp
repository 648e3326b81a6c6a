#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tweetscope {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input data (files, records, lexicons, snapshots). The CLI maps these
/// to exit code 2.
class DataError : public Error {
public:
    using Error::Error;
};

/// Bad caller-supplied arguments (ranges, indices, unknown keys).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class FileNotFound : public DataError {
public:
    explicit FileNotFound(const std::string& path)
        : DataError("file not found: " + path), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// A data error tied to a line of an input file.
class LineError : public DataError {
public:
    LineError(const std::string& what, std::string file, std::size_t line)
        : DataError(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)), line_(line) {}
    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

class MalformedRecord : public LineError {
public:
    using LineError::LineError;
};

class MalformedLexicon : public LineError {
public:
    using LineError::LineError;
};

class MalformedConfig : public LineError {
public:
    using LineError::LineError;
};

class EmptyVocabulary : public DataError {
public:
    EmptyVocabulary() : DataError("no term survives vocabulary filtering") {}
};

class EmptyCorpus : public DataError {
public:
    EmptyCorpus() : DataError("corpus has no documents") {}
};

class CorruptSnapshot : public DataError {
public:
    using DataError::DataError;
};

class ScoreCorpusMismatch : public DataError {
public:
    using DataError::DataError;
};

class TopicOutOfRange : public InvalidArgument {
public:
    TopicOutOfRange(std::size_t topic, std::size_t num_topics)
        : InvalidArgument("topic " + std::to_string(topic) + " out of range [0, " +
                          std::to_string(num_topics) + ")") {}
};

class UnknownTerm : public InvalidArgument {
public:
    explicit UnknownTerm(const std::string& term)
        : InvalidArgument("unknown term: " + term) {}
};

class InvalidRange : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

}  // namespace tweetscope
