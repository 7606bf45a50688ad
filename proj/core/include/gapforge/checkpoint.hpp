#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include <json.hpp>

namespace gapforge {

std::string sha256_hex(std::string_view data);

struct ShardKey {
  std::size_t check_index = 0;
  std::size_t shard_index = 0;
  friend auto operator<=>(const ShardKey&, const ShardKey&) = default;
};

struct CheckpointRecord {
  ShardKey key;
  std::string check_id;
  std::uint64_t range_lo = 0;
  std::uint64_t range_hi = 0;
  nlohmann::json payload;
};

enum class CheckpointMode { Fresh, Resume, Reset };

// Append-only JSON-lines file. The first line binds the file to a config
// digest; every later line carries one finished shard and the SHA-256 of its
// payload. A trailing line without a newline is treated as an interrupted
// write and dropped.
class Checkpoint {
 public:
  // Fresh refuses an existing file. Resume loads and verifies it (a missing
  // file starts empty). Reset truncates. Throws CheckpointError.
  Checkpoint(std::string path, const std::string& config_digest, CheckpointMode mode);

  const std::map<ShardKey, CheckpointRecord>& completed() const { return completed_; }
  void append(const CheckpointRecord& record);
  const std::string& path() const { return path_; }

 private:
  void load(const std::string& config_digest);
  void start(const std::string& config_digest);

  std::string path_;
  std::map<ShardKey, CheckpointRecord> completed_;
  std::ofstream out_;
  std::mutex mutex_;
};

}  // namespace gapforge
