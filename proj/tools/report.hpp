#pragma once

#include <concepts>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cn4::cli {

// Builds one TSV file. Text fields go through field(), which escapes
// backslash, tab and newline.
class Tsv {
 public:
  Tsv& header(std::initializer_list<std::string_view> names);
  Tsv& cell(std::string_view raw);
  Tsv& field(std::string_view text);
  template <std::integral T>
  Tsv& num(T v) {
    return cell(std::to_string(v));
  }
  Tsv& real(double v, int digits = 6);
  Tsv& end();

  const std::string& str() const { return text_; }

 private:
  void separate();
  std::string text_;
  bool fresh_ = true;
};

template <class Map>
std::string histogram_tsv(const Map& h, std::string_view key, std::string_view value) {
  Tsv t;
  t.header({key, value});
  for (const auto& [k, v] : h) t.num(k).num(v).end();
  return t.str();
}

// Named artifacts of one command, plus the values echoed into the manifest.
struct Bundle {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> files;

  void add(std::string name, std::string content) {
    files.emplace_back(std::move(name), std::move(content));
  }
};

std::string sha256_hex(std::string_view data);

// MANIFEST.tsv contents: command and seed, then path, size and digest of
// every artifact in path order.
std::string manifest(const Bundle& b);

// Writes every artifact and MANIFEST.tsv under `dir`. Files are first written
// to a staging directory inside `dir` and renamed into place only after all
// of them succeeded; on failure the staging directory is removed and IoError
// is thrown.
void emit_report(const Bundle& b, const std::filesystem::path& dir);

}  // namespace cn4::cli
