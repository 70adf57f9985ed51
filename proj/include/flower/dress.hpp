#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flower/fr_code.hpp"
#include "flower/mds.hpp"
#include "flower/repair.hpp"

namespace flower {

// End-to-end storage simulation: a file is MDS-encoded into theta packets,
// the packets are replicated over nodes as an FR code prescribes, failed
// nodes are rebuilt by copying replicas from helpers, and a data collector
// reconstructs the file from enough distinct packets.

/// A file processed in stripes of B symbols (one byte per symbol). The
/// payload is zero-padded to a stripe multiple; the pre-padding length is
/// kept so the original bytes can be recovered exactly.
struct FileBlob {
  int B = 1;
  std::vector<std::uint8_t> data;  // padded
  std::uint64_t original_length = 0;

  int stripes() const { return static_cast<int>(data.size()) / B; }
  std::vector<std::uint8_t> original() const {
    return {data.begin(), data.begin() + static_cast<std::ptrdiff_t>(original_length)};
  }
  bool operator==(const FileBlob&) const = default;
};

inline FileBlob make_file_blob(std::vector<std::uint8_t> bytes, int B) {
  if (B < 1 || B > 256) throw SpecError("B must be in 1..256");
  FileBlob file;
  file.B = B;
  file.original_length = bytes.size();
  file.data = std::move(bytes);
  const std::size_t stripe = static_cast<std::size_t>(B);
  if (file.data.size() % stripe != 0)
    file.data.resize((file.data.size() / stripe + 1) * stripe, 0);
  return file;
}

/// Encodes a file stripe by stripe; packet j collects the j-th coded symbol
/// of every stripe.
inline std::vector<std::vector<std::uint8_t>> mds_encode(const FileBlob& file,
                                                         const MdsCode& mds) {
  if (mds.dimension() != file.B)
    throw SpecError("MDS dimension must equal the stripe size B");
  const int stripes = file.stripes();
  std::vector<std::vector<std::uint8_t>> blocks(
      static_cast<std::size_t>(mds.length()),
      std::vector<std::uint8_t>(static_cast<std::size_t>(stripes)));
  for (int s = 0; s < stripes; ++s) {
    const std::span<const std::uint8_t> stripe(
        file.data.data() + static_cast<std::size_t>(s) * file.B,
        static_cast<std::size_t>(file.B));
    const std::vector<std::uint8_t> codeword = mds.encode(stripe);
    for (int j = 0; j < mds.length(); ++j)
      blocks[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] =
          codeword[static_cast<std::size_t>(j)];
  }
  return blocks;
}

inline std::vector<std::vector<std::uint8_t>> mds_encode(const FileBlob& file,
                                                         int theta) {
  return mds_encode(file, MdsCode(theta, file.B));
}

/// Rebuilds a file from indexed packet blocks (at least B distinct indices).
inline FileBlob mds_decode(
    const std::vector<std::pair<int, std::vector<std::uint8_t>>>& packets,
    const MdsCode& mds, std::uint64_t original_length) {
  if (packets.empty())
    throw InsufficientDataError("no packets supplied", 0, mds.dimension());
  const std::size_t stripes = packets.front().second.size();
  for (const auto& [index, block] : packets) {
    (void)index;
    if (block.size() != stripes)
      throw SpecError("packet blocks must all have the same stripe count");
  }
  std::vector<int> indices;
  for (const auto& [index, block] : packets) {
    (void)block;
    indices.push_back(index);
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (static_cast<int>(indices.size()) < mds.dimension())
    throw InsufficientDataError(
        "reconstruction needs " + std::to_string(mds.dimension()) +
            " distinct packets, got " + std::to_string(indices.size()),
        static_cast<int>(indices.size()), mds.dimension());

  FileBlob file;
  file.B = mds.dimension();
  file.original_length = original_length;
  file.data.resize(stripes * static_cast<std::size_t>(mds.dimension()));
  if (original_length > file.data.size())
    throw SpecError("original length exceeds the decoded payload");
  std::vector<std::pair<int, std::uint8_t>> shares(packets.size());
  for (std::size_t s = 0; s < stripes; ++s) {
    for (std::size_t k = 0; k < packets.size(); ++k)
      shares[k] = {packets[k].first, packets[k].second[s]};
    const std::vector<std::uint8_t> message = mds.decode(shares);
    std::copy(message.begin(), message.end(),
              file.data.begin() + static_cast<std::ptrdiff_t>(s * message.size()));
  }
  return file;
}

/// One replica held by a node: a packet index and its block, bit-identical
/// to the coded packet.
struct StoredBlock {
  int packet = 0;
  std::vector<std::uint8_t> data;
  bool operator==(const StoredBlock&) const = default;
};

/// An FR-coded storage system holding one MDS-encoded file.
class DressSystem {
 public:
  DressSystem(FrCode code, const FileBlob& file)
      : code_(std::move(code)),
        mds_(code_.packet_count(), file.B),
        original_length_(file.original_length),
        blocks_(mds_encode(file, mds_)) {
    check_placement();
    place();
  }

  const FrCode& code() const { return code_; }
  const MdsCode& mds() const { return mds_; }
  int B() const { return mds_.dimension(); }
  std::uint64_t original_length() const { return original_length_; }
  int stripe_count() const {
    return static_cast<int>(blocks_.front().size());
  }

  /// The authoritative coded packet j (1-based).
  const std::vector<std::uint8_t>& packet_block(int j) const {
    if (j < 1 || j > mds_.length())
      throw SpecError("packet index out of range");
    return blocks_[static_cast<std::size_t>(j) - 1];
  }

  /// Replicas stored on node i (1-based), in the code's storage order.
  const std::vector<StoredBlock>& node_contents(int i) const {
    if (i < 1 || i > code_.node_count())
      throw SpecError("node index out of range");
    return nodes_[static_cast<std::size_t>(i) - 1];
  }

  int total_stored_blocks() const {
    int total = 0;
    for (const auto& u : nodes_) total += static_cast<int>(u.size());
    return total;
  }

  /// Rebuilds a system around existing coded packets (snapshot restore).
  static DressSystem restore(FrCode code, int B,
                             std::uint64_t original_length,
                             std::vector<std::vector<std::uint8_t>> blocks) {
    return DressSystem(std::move(code), B, original_length,
                       std::move(blocks));
  }

 private:
  DressSystem(FrCode code, int B, std::uint64_t original_length,
              std::vector<std::vector<std::uint8_t>> blocks)
      : code_(std::move(code)),
        mds_(code_.packet_count(), B),
        original_length_(original_length),
        blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != code_.packet_count())
      throw SpecError("snapshot holds " + std::to_string(blocks_.size()) +
                      " packet blocks, code expects " +
                      std::to_string(code_.packet_count()));
    for (const auto& block : blocks_)
      if (block.size() != blocks_.front().size())
        throw SpecError("packet blocks must all have the same stripe count");
    check_placement();
    place();
  }

  void check_placement() {
    const Profiles prof = profiles(code_);
    for (int j = 1; j <= code_.packet_count(); ++j)
      if (prof.rho_vec[static_cast<std::size_t>(j) - 1] == 0)
        throw SpecError("placement: packet " + std::to_string(j) +
                        " is never stored by the code");
  }

  void place() {
    nodes_.assign(static_cast<std::size_t>(code_.node_count()), {});
    for (int i = 1; i <= code_.node_count(); ++i)
      for (int p : code_.node(i))
        nodes_[static_cast<std::size_t>(i) - 1].push_back(
            {p, blocks_[static_cast<std::size_t>(p) - 1]});
  }

  FrCode code_;
  MdsCode mds_;
  std::uint64_t original_length_;
  std::vector<std::vector<std::uint8_t>> blocks_;
  std::vector<std::vector<StoredBlock>> nodes_;
};

inline DressSystem build_system(const FrCode& code, const FileBlob& file) {
  return DressSystem(code, file);
}

enum class RepairStrategy { MinContact, Sdr };

struct RepairResult {
  std::vector<StoredBlock> restored;  // the failed node's contents, in order
  std::vector<int> helpers;           // sorted helper node indices
  int blocks_transferred = 0;         // packet blocks downloaded
};

namespace detail {

inline void require_repairable(const FrCode& code, int failed,
                               std::vector<int>& required) {
  std::vector<int> orphans;
  split_required(code, failed, required, orphans);
  if (!orphans.empty()) {
    std::string list;
    for (int p : orphans) list += (list.empty() ? "" : ", ") + std::to_string(p);
    throw UnrepairableError("node " + std::to_string(failed) +
                                " cannot be repaired; no external replica of "
                                "packet(s) " + list,
                            std::move(orphans));
  }
}

inline const StoredBlock& fetch(const DressSystem& sys, int helper,
                                int packet) {
  for (const StoredBlock& block : sys.node_contents(helper))
    if (block.packet == packet) return block;
  throw CoverageError("helper " + std::to_string(helper) +
                      " does not hold packet " + std::to_string(packet));
}

inline RepairResult rebuild_from(const DressSystem& sys, int failed,
                                 const std::vector<int>& helpers,
                                 const std::vector<int>& required) {
  RepairResult result;
  result.helpers = helpers;
  std::map<int, const StoredBlock*> downloaded;
  for (int p : required) {
    const StoredBlock* found = nullptr;
    for (int h : helpers) {
      for (const StoredBlock& block : sys.node_contents(h)) {
        if (block.packet == p) {
          found = &block;
          break;
        }
      }
      if (found) break;
    }
    if (!found)
      throw CoverageError("helper set does not cover packet " +
                          std::to_string(p));
    downloaded[p] = found;
    ++result.blocks_transferred;
  }
  for (int p : sys.code().node(failed))
    result.restored.push_back(*downloaded.at(p));
  return result;
}

}  // namespace detail

/// Table-based repair of node `failed`: download each needed packet block
/// from a helper replica and reassemble the node's exact contents.
inline RepairResult repair_node(const DressSystem& sys, int failed,
                                RepairStrategy strategy =
                                    RepairStrategy::MinContact) {
  const FrCode& code = sys.code();
  std::vector<int> required;
  detail::require_repairable(code, failed, required);

  if (strategy == RepairStrategy::MinContact) {
    const auto sets = minimal_helper_sets(code, failed);
    return detail::rebuild_from(sys, failed, sets.front(), required);
  }

  // One download per helper, every stored copy from its own helper.
  const auto assignment = sdr_assignment(code, failed);
  if (!assignment)
    throw CoverageError(
        "node " + std::to_string(failed) +
        " admits no distinct-helper assignment (one download per helper)");
  RepairResult result;
  for (const auto& [packet, helper] : *assignment) {
    result.restored.push_back(detail::fetch(sys, helper, packet));
    result.helpers.push_back(helper);
    ++result.blocks_transferred;
  }
  std::sort(result.helpers.begin(), result.helpers.end());
  return result;
}

/// Repair from a caller-chosen helper set; coverage is validated first.
inline RepairResult repair_node(const DressSystem& sys, int failed,
                                const std::vector<int>& fixed_helpers) {
  const FrCode& code = sys.code();
  std::vector<int> required;
  detail::require_repairable(code, failed, required);
  std::vector<int> helpers(fixed_helpers);
  std::sort(helpers.begin(), helpers.end());
  helpers.erase(std::unique(helpers.begin(), helpers.end()), helpers.end());
  for (int h : helpers) {
    if (h < 1 || h > code.node_count())
      throw SpecError("helper index " + std::to_string(h) +
                      " is outside 1.." + std::to_string(code.node_count()));
    if (h == failed)
      throw SpecError("the failed node cannot serve as its own helper");
  }
  for (int p : required) {
    const bool covered = std::any_of(helpers.begin(), helpers.end(), [&](int h) {
      const auto& u = code.node(h);
      return std::find(u.begin(), u.end(), p) != u.end();
    });
    if (!covered)
      throw CoverageError("fixed helper set does not cover packet " +
                          std::to_string(p));
  }
  return detail::rebuild_from(sys, failed, helpers, required);
}

/// Data collection: gather the distinct packets stored on the given nodes
/// and decode the file from them.
inline FileBlob collect(const DressSystem& sys, const std::vector<int>& nodes) {
  std::vector<int> picked(nodes);
  std::sort(picked.begin(), picked.end());
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
  for (int i : picked)
    if (i < 1 || i > sys.code().node_count())
      throw SpecError("node index " + std::to_string(i) + " is outside 1.." +
                      std::to_string(sys.code().node_count()));
  std::map<int, const std::vector<std::uint8_t>*> gathered;
  for (int i : picked)
    for (const StoredBlock& block : sys.node_contents(i))
      gathered.emplace(block.packet, &block.data);
  if (static_cast<int>(gathered.size()) < sys.B())
    throw InsufficientDataError(
        "data collector found " + std::to_string(gathered.size()) +
            " distinct packets, needs " + std::to_string(sys.B()),
        static_cast<int>(gathered.size()), sys.B());
  std::vector<std::pair<int, std::vector<std::uint8_t>>> packets;
  packets.reserve(gathered.size());
  for (const auto& [index, data] : gathered) packets.emplace_back(index, *data);
  return mds_decode(packets, sys.mds(), sys.original_length());
}

/// Smallest k such that every k-subset of nodes reaches at least B distinct
/// packets. Exact brute force with early exit; desk scale (n <= 20).
inline int min_reconstruction_degree(const DressSystem& sys) {
  const FrCode& code = sys.code();
  const int n = code.node_count();
  if (n > kExactRepairNodeLimit)
    throw SpecError("min_reconstruction_degree is exact and limited to n <= " +
                    std::to_string(kExactRepairNodeLimit));
  // Distinct packets per node as bitmasks over 1..theta.
  const int words = (code.packet_count() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> masks(
      static_cast<std::size_t>(n),
      std::vector<std::uint64_t>(static_cast<std::size_t>(words), 0));
  for (int i = 1; i <= n; ++i)
    for (int p : code.node(i))
      masks[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(p - 1) / 64] |=
          std::uint64_t{1} << ((p - 1) % 64);

  std::vector<int> subset;
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(words), 0);
  // Depth-first over k-subsets; bails out of a size class on first failure.
  auto all_subsets_reach = [&](auto&& self, int next, int remaining,
                               std::vector<std::uint64_t> covered) -> bool {
    if (remaining == 0) {
      int distinct = 0;
      for (std::uint64_t w : covered) distinct += std::popcount(w);
      return distinct >= sys.B();
    }
    for (int i = next; i <= n - remaining + 1; ++i) {
      std::vector<std::uint64_t> with(covered);
      for (int w = 0; w < words; ++w)
        with[static_cast<std::size_t>(w)] |=
            masks[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(w)];
      if (!self(self, i + 1, remaining - 1, std::move(with))) return false;
    }
    return true;
  };
  for (int k = 1; k <= n; ++k) {
    if (all_subsets_reach(all_subsets_reach, 1, k,
                          std::vector<std::uint64_t>(
                              static_cast<std::size_t>(words), 0)))
      return k;
  }
  return n + 1;
}

// Snapshot format: "FRS1" magic, then little-endian u32 n, u32 theta, u32 B,
// u64 original length, then theta packet blocks, each a little-endian u32
// length followed by raw bytes.

namespace detail {

inline void write_u32le(std::ostream& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k)
    out.put(static_cast<char>((v >> (8 * k)) & 0xff));
}

inline void write_u64le(std::ostream& out, std::uint64_t v) {
  for (int k = 0; k < 8; ++k)
    out.put(static_cast<char>((v >> (8 * k)) & 0xff));
}

inline std::uint32_t read_u32le(std::istream& in) {
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) {
    const int c = in.get();
    if (c < 0) throw SpecError("snapshot truncated");
    v |= static_cast<std::uint32_t>(c) << (8 * k);
  }
  return v;
}

inline std::uint64_t read_u64le(std::istream& in) {
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) {
    const int c = in.get();
    if (c < 0) throw SpecError("snapshot truncated");
    v |= static_cast<std::uint64_t>(c) << (8 * k);
  }
  return v;
}

}  // namespace detail

inline void save_snapshot(const DressSystem& sys, std::ostream& out) {
  out.write("FRS1", 4);
  detail::write_u32le(out, static_cast<std::uint32_t>(sys.code().node_count()));
  detail::write_u32le(out, static_cast<std::uint32_t>(sys.code().packet_count()));
  detail::write_u32le(out, static_cast<std::uint32_t>(sys.B()));
  detail::write_u64le(out, sys.original_length());
  for (int j = 1; j <= sys.code().packet_count(); ++j) {
    const auto& block = sys.packet_block(j);
    detail::write_u32le(out, static_cast<std::uint32_t>(block.size()));
    out.write(reinterpret_cast<const char*>(block.data()),
              static_cast<std::streamsize>(block.size()));
  }
  if (!out) throw SpecError("snapshot write failed");
}

/// Reloads a snapshot; the placement is rebuilt from the given code, which
/// must match the snapshot's dimensions.
inline DressSystem load_snapshot(std::istream& in, const FrCode& code) {
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "FRS1")
    throw SpecError("not a stored-system snapshot");
  const auto n = detail::read_u32le(in);
  const auto theta = detail::read_u32le(in);
  const auto B = detail::read_u32le(in);
  const auto original_length = detail::read_u64le(in);
  if (static_cast<int>(n) != code.node_count() ||
      static_cast<int>(theta) != code.packet_count())
    throw SpecError("snapshot dimensions (" + std::to_string(n) + "," +
                    std::to_string(theta) + ") do not match the code");
  std::vector<std::vector<std::uint8_t>> blocks(theta);
  for (std::uint32_t j = 0; j < theta; ++j) {
    const auto len = detail::read_u32le(in);
    blocks[j].resize(len);
    in.read(reinterpret_cast<char*>(blocks[j].data()), len);
    if (!in) throw SpecError("snapshot truncated");
  }
  return DressSystem::restore(code, static_cast<int>(B), original_length,
                              std::move(blocks));
}

}  // namespace flower
