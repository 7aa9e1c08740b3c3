#include "said/naming.hpp"

#include <charconv>

namespace said {

namespace {

std::int64_t parse_marker_value(const std::string& comp, char marker) {
  const char* begin = comp.data() + 2;
  const char* end = comp.data() + comp.size();
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) {
    throw NameParseError(std::string("non-numeric _") + marker +
                         " marker in component '" + comp + "'");
  }
  if (value < 0) {
    throw NameParseError(std::string("negative _") + marker + " marker in '" + comp + "'");
  }
  return value;
}

}  // namespace

namespace {

std::vector<std::string> name_elements(const ContentName& n) {
  std::vector<std::string> out = n.components;
  if (n.version) out.push_back("_v" + std::to_string(*n.version));
  if (n.chunk_id) out.push_back("_c" + std::to_string(*n.chunk_id));
  if (n.segment_id) out.push_back("_s" + std::to_string(*n.segment_id));
  return out;
}

}  // namespace

bool ContentName::is_prefix_of(const ContentName& other) const {
  const auto a = name_elements(*this);
  const auto b = name_elements(other);
  if (a.size() > b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

int ContentName::length() const {
  return static_cast<int>(components.size()) + (version ? 1 : 0) +
         (chunk_id ? 1 : 0) + (segment_id ? 1 : 0);
}

ContentName ContentName::without_markers() const {
  return ContentName{components, std::nullopt, std::nullopt, std::nullopt};
}

ContentName ContentName::chunk_prefix() const {
  ContentName out = *this;
  out.segment_id.reset();
  return out;
}

ContentName parse_name(const std::string& text) {
  if (text.empty() || text[0] != '/') {
    throw NameParseError("name must start with '/': '" + text + "'");
  }
  ContentName name;
  std::size_t pos = 1;
  // 0: components, 1: saw version, 2: saw chunk, 3: saw segment
  int stage = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('/', pos);
    if (next == std::string::npos) next = text.size();
    std::string comp = text.substr(pos, next - pos);
    if (comp.empty()) {
      if (next == text.size() && pos == text.size()) break;  // trailing slash
      throw NameParseError("empty component in '" + text + "'");
    }
    if (comp.size() >= 2 && comp[0] == '_' &&
        (comp[1] == 'v' || comp[1] == 'c' || comp[1] == 's')) {
      const char marker = comp[1];
      if (marker == 'v') {
        if (stage >= 1) throw NameParseError("misplaced _v marker in '" + text + "'");
        name.version = parse_marker_value(comp, 'v');
        stage = 1;
      } else if (marker == 'c') {
        if (stage >= 2) throw NameParseError("misplaced _c marker in '" + text + "'");
        name.chunk_id = parse_marker_value(comp, 'c');
        stage = 2;
      } else {
        if (stage >= 3) throw NameParseError("misplaced _s marker in '" + text + "'");
        if (stage < 2) throw NameParseError("_s marker requires a _c chunk in '" + text + "'");
        name.segment_id = parse_marker_value(comp, 's');
        stage = 3;
      }
    } else {
      if (stage != 0) {
        throw NameParseError("text component '" + comp + "' after markers in '" + text + "'");
      }
      name.components.push_back(std::move(comp));
    }
    if (next == text.size()) break;
    pos = next + 1;
  }
  if (name.components.empty()) {
    throw NameParseError("name has no text components: '" + text + "'");
  }
  return name;
}

std::string format_name(const ContentName& name) {
  std::string out;
  for (const auto& c : name.components) {
    out += '/';
    out += c;
  }
  if (name.version) out += "/_v" + std::to_string(*name.version);
  if (name.chunk_id) out += "/_c" + std::to_string(*name.chunk_id);
  if (name.segment_id) out += "/_s" + std::to_string(*name.segment_id);
  return out;
}

std::int64_t chunk_of(std::int64_t segment_id, std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("chunk size must be positive");
  if (segment_id < 0) throw std::invalid_argument("segment id must be non-negative");
  return segment_id / n;
}

ContentName segment_name(const ContentName& flow_prefix, std::int64_t segment_id,
                         const NamingConfig& naming) {
  ContentName out = flow_prefix;
  out.chunk_id = chunk_of(segment_id, naming.chunk_size);
  out.segment_id = segment_id;
  return out;
}

}  // namespace said
