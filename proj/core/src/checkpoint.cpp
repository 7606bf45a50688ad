#include "gapforge/checkpoint.hpp"

#include <filesystem>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "gapforge/errors.hpp"

namespace gapforge {

namespace {

constexpr const char* kSchema = "gapforge-checkpoint/1";

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw CheckpointError("SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

Checkpoint::Checkpoint(std::string path, const std::string& config_digest, CheckpointMode mode)
    : path_(std::move(path)) {
  const bool exists = std::filesystem::exists(path_);
  switch (mode) {
    case CheckpointMode::Fresh:
      if (exists) {
        throw CheckpointError(fmt::format("checkpoint '{}' already exists; pass --resume or --reset", path_));
      }
      start(config_digest);
      break;
    case CheckpointMode::Reset:
      start(config_digest);
      break;
    case CheckpointMode::Resume:
      if (exists) {
        load(config_digest);
      } else {
        start(config_digest);
      }
      break;
  }
}

void Checkpoint::start(const std::string& config_digest) {
  out_.open(path_, std::ios::out | std::ios::trunc);
  if (!out_) throw CheckpointError(fmt::format("cannot write checkpoint '{}'", path_));
  const nlohmann::json header{{"type", "header"}, {"schema", kSchema}, {"config_digest", config_digest}};
  out_ << header.dump() << '\n';
  out_.flush();
}

void Checkpoint::load(const std::string& config_digest) {
  std::string text;
  {
    std::ifstream in(path_, std::ios::binary);
    if (!in) throw CheckpointError(fmt::format("cannot read checkpoint '{}'", path_));
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  // Drop an unterminated final line: the writer was interrupted mid-record.
  const auto last_newline = text.rfind('\n');
  const std::size_t complete = last_newline == std::string::npos ? 0 : last_newline + 1;
  text.resize(complete);

  std::istringstream lines(text);
  std::string line;
  int number = 0;
  bool have_header = false;
  while (std::getline(lines, line)) {
    ++number;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw CheckpointError(fmt::format("checkpoint '{}' line {} is corrupt; rerun with --reset", path_, number));
    }
    if (!have_header) {
      if (j.value("type", "") != "header" || j.value("schema", "") != kSchema) {
        throw CheckpointError(fmt::format("checkpoint '{}' has no valid header; rerun with --reset", path_));
      }
      if (j.value("config_digest", "") != config_digest) {
        throw CheckpointError(
            fmt::format("checkpoint '{}' belongs to a different configuration; rerun with --reset", path_));
      }
      have_header = true;
      continue;
    }
    try {
      CheckpointRecord r;
      r.key = {j.at("check_index").get<std::size_t>(), j.at("shard_index").get<std::size_t>()};
      r.check_id = j.at("check_id").get<std::string>();
      r.range_lo = j.at("shard_range").at(0).get<std::uint64_t>();
      r.range_hi = j.at("shard_range").at(1).get<std::uint64_t>();
      r.payload = j.at("payload");
      if (sha256_hex(r.payload.dump()) != j.at("digest").get<std::string>()) {
        throw CheckpointError(
            fmt::format("checkpoint '{}' line {}: digest mismatch; rerun with --reset", path_, number));
      }
      completed_[r.key] = std::move(r);
    } catch (const nlohmann::json::exception&) {
      throw CheckpointError(fmt::format("checkpoint '{}' line {} is malformed; rerun with --reset", path_, number));
    }
  }
  if (!have_header) {
    start(config_digest);
    return;
  }
  // Rewrite without the dropped partial line, then keep appending.
  {
    std::ofstream rewrite(path_, std::ios::out | std::ios::trunc | std::ios::binary);
    rewrite << text;
  }
  out_.open(path_, std::ios::out | std::ios::app);
  if (!out_) throw CheckpointError(fmt::format("cannot append to checkpoint '{}'", path_));
}

void Checkpoint::append(const CheckpointRecord& record) {
  const nlohmann::json j{{"type", "shard"},
                         {"check_index", record.key.check_index},
                         {"shard_index", record.key.shard_index},
                         {"check_id", record.check_id},
                         {"shard_range", {record.range_lo, record.range_hi}},
                         {"digest", sha256_hex(record.payload.dump())},
                         {"payload", record.payload}};
  std::lock_guard lock(mutex_);
  out_ << j.dump() << '\n';
  out_.flush();
  if (!out_) throw CheckpointError(fmt::format("write to checkpoint '{}' failed", path_));
  completed_[record.key] = record;
}

}  // namespace gapforge
