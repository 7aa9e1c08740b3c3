#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace said {

// Hierarchical content name. Canonical text form:
//   /<comp>/.../_v<int>[/_c<int>[/_s<int>]]
// A segment id is only meaningful inside a chunk, so `_s` requires `_c`.
struct ContentName {
  std::vector<std::string> components;
  std::optional<std::int64_t> version;
  std::optional<std::int64_t> chunk_id;
  std::optional<std::int64_t> segment_id;

  bool operator==(const ContentName&) const = default;

  // True if `this` is a prefix of `other` (component-wise, then marker-wise).
  bool is_prefix_of(const ContentName& other) const;

  // Number of name elements, counting markers. Used for longest-prefix match.
  int length() const;

  ContentName without_markers() const;
  ContentName chunk_prefix() const;  // drops the segment component
};

struct NameParseError : std::runtime_error {
  explicit NameParseError(const std::string& what) : std::runtime_error(what) {}
};

// flow identity: name prefix up to (and including) the version, plus the
// flow size F in packets.
struct FlowId {
  ContentName prefix;
  std::int64_t flow_size_pkts = 0;

  bool operator==(const FlowId&) const = default;
};

struct NamingConfig {
  std::int64_t chunk_size = 100;  // packets per chunk
};

ContentName parse_name(const std::string& text);
std::string format_name(const ContentName& name);

// floor(segment_id / n); throws std::invalid_argument when n == 0.
std::int64_t chunk_of(std::int64_t segment_id, std::int64_t n);

// Full data name for a segment of a flow, chunk component always present.
ContentName segment_name(const ContentName& flow_prefix, std::int64_t segment_id,
                         const NamingConfig& naming);

}  // namespace said
