#include "cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <fstream>
#include <sstream>

#include "app.hpp"
#include "weyllab/count_io.hpp"
#include "weyllab/error.hpp"

namespace weyllab::app {
namespace {

class FileLock {
public:
  FileLock(const std::filesystem::path& path, bool exclusive) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) throw std::runtime_error("cannot open lock file " + path.string());
    if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
      ::close(fd_);
      throw std::runtime_error("cannot lock " + path.string());
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

private:
  int fd_ = -1;
};

}  // namespace

CountCache::CountCache(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

std::filesystem::path CountCache::path_for(int s, int k, std::uint64_t N, std::optional<std::uint64_t> part_bound) const {
  return dir_ / count_table_cache_name(s, k, N, part_bound);
}

std::optional<CountTable> CountCache::load(int s, int k, std::uint64_t N, std::optional<std::uint64_t> part_bound) const {
  const auto path = path_for(s, k, N, part_bound);
  std::string problem;
  {
    FileLock lock(dir_ / ".lock", false);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    try {
      CountTable table = read_count_table(in);
      if (table.s == s && table.k == k && table.N == N && table.part_bound == part_bound) return table;
      problem = "key mismatch";
    } catch (const CorruptData& e) {
      problem = e.what();
    }
  }
  FileLock lock(dir_ / ".lock", true);
  const auto qdir = dir_ / "quarantine";
  std::filesystem::create_directories(qdir);
  const auto stamp = std::chrono::duration_cast<std::chrono::nanoseconds>(
                         std::chrono::system_clock::now().time_since_epoch()).count();
  const auto target = qdir / (path.filename().string() + "." + std::to_string(stamp));
  std::error_code ec;
  std::filesystem::rename(path, target, ec);
  throw CacheCorruption("corrupt cache entry " + path.string() + " (" + problem + "); moved to " + target.string(),
                        target);
}

void CountCache::store(const CountTable& table) const {
  std::ostringstream buf(std::ios::binary);
  write_count_table(buf, table);
  FileLock lock(dir_ / ".lock", true);
  write_atomically(path_for(table.s, table.k, table.N, table.part_bound), buf.str());
}

std::size_t clear_cache(const std::filesystem::path& dir) {
  if (!std::filesystem::exists(dir)) return 0;
  std::filesystem::create_directories(dir);
  FileLock lock(dir / ".lock", true);
  std::size_t removed = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wlct") {
      std::filesystem::remove(entry.path());
      ++removed;
    }
  }
  return removed;
}

}  // namespace weyllab::app
