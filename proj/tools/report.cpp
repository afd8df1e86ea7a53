#include "report.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <system_error>

#include "cn4/error.hpp"

namespace cn4::cli {

namespace fs = std::filesystem;

void Tsv::separate() {
  if (!fresh_) text_ += '\t';
  fresh_ = false;
}

Tsv& Tsv::header(std::initializer_list<std::string_view> names) {
  for (auto n : names) cell(n);
  return end();
}

Tsv& Tsv::cell(std::string_view raw) {
  separate();
  text_ += raw;
  return *this;
}

Tsv& Tsv::field(std::string_view text) {
  separate();
  for (char c : text) {
    switch (c) {
      case '\\': text_ += "\\\\"; break;
      case '\t': text_ += "\\t"; break;
      case '\n': text_ += "\\n"; break;
      default: text_ += c;
    }
  }
  return *this;
}

Tsv& Tsv::real(double v, int digits) { return cell(fmt::format("{:.{}f}", v, digits)); }

Tsv& Tsv::end() {
  text_ += '\n';
  fresh_ = true;
  return *this;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw IoError("sha256 failed");
  std::string hex;
  for (unsigned i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string manifest(const Bundle& b) {
  std::vector<const std::pair<std::string, std::string>*> order;
  for (const auto& f : b.files) order.push_back(&f);
  std::sort(order.begin(), order.end(), [](auto* x, auto* y) { return x->first < y->first; });
  Tsv t;
  t.cell("#command").cell(b.command).end();
  t.cell("#seed").num(b.seed).end();
  t.header({"path", "bytes", "sha256"});
  for (auto* f : order) t.cell(f->first).num(f->second.size()).cell(sha256_hex(f->second)).end();
  return t.str();
}

namespace {

void write_file(const fs::path& p, const std::string& content) {
  std::error_code ec;
  fs::create_directories(p.parent_path(), ec);
  if (ec) throw IoError("cannot create " + p.parent_path().string() + ": " + ec.message());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot write " + p.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("cannot write " + p.string());
}

}  // namespace

void emit_report(const Bundle& b, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  fs::path staging = dir / ".staging";
  fs::remove_all(staging, ec);
  try {
    if (!fs::create_directory(staging, ec) || ec)
      throw IoError("cannot create " + staging.string() + ": " + ec.message());
    for (const auto& [name, content] : b.files) write_file(staging / name, content);
    write_file(staging / "MANIFEST.tsv", manifest(b));
    auto move_in = [&](const std::string& name) {
      fs::path target = dir / name;
      fs::create_directories(target.parent_path(), ec);
      fs::rename(staging / name, target, ec);
      if (ec) throw IoError("cannot move " + name + " into " + dir.string() + ": " + ec.message());
    };
    for (const auto& f : b.files) move_in(f.first);
    // The manifest goes last so its presence marks a complete report.
    move_in("MANIFEST.tsv");
  } catch (...) {
    fs::remove_all(staging, ec);
    throw;
  }
  fs::remove_all(staging, ec);
}

}  // namespace cn4::cli
