#include "dani/attribute_model.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "dani/errors.hpp"

namespace dani {

double jaccard(const ContingencyTable& t) {
  const auto denom = t.a + t.b + t.c;
  if (denom == 0) return 0.0;
  return static_cast<double>(t.a) / static_cast<double>(denom);
}

AttributeModel::AttributeModel() { intern(std::string(kUnknown)); }

std::size_t AttributeModel::intern(const std::string& token) {
  if (auto it = index_.find(token); it != index_.end()) return it->second;
  if (token.empty() || token.find_first_of("\t\n\r ") != std::string::npos) {
    throw UnknownAttributeError("invalid attribute token '" + token + "'");
  }
  const std::size_t id = names_.size();
  names_.push_back(token);
  index_.emplace(token, id);
  occurrences_.push_back(0);
  for (auto& row : joint_) row.push_back(0);
  joint_.emplace_back(names_.size(), 0);
  return id;
}

std::size_t AttributeModel::index_of(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) {
    throw UnknownAttributeError("unknown attribute '" + std::string(token) + "'");
  }
  return it->second;
}

std::uint64_t AttributeModel::joint(std::size_t i, std::size_t j) const { return joint_[i][j]; }

void AttributeModel::add_attribute(const std::string& token) {
  if (frozen_) throw FrozenError("attribute model is frozen");
  intern(token);
}

void AttributeModel::observe_event(const std::set<std::string>& present) {
  if (frozen_) throw FrozenError("attribute model is frozen");

  const std::size_t unknown = index_of(kUnknown);
  std::vector<std::size_t> ids;
  bool forced_unknown = false;
  for (const auto& token : present) {
    if (token == kUnknown) {
      forced_unknown = true;
      continue;
    }
    ids.push_back(intern(token));
  }

  bool novel = forced_unknown;
  for (std::size_t i = 0; i < ids.size() && !novel; ++i) {
    if (occurrences_[ids[i]] == 0) novel = true;
    for (std::size_t j = i + 1; j < ids.size() && !novel; ++j) {
      if (joint_[ids[i]][ids[j]] == 0) novel = true;
    }
  }
  if (novel) ids.push_back(unknown);

  for (std::size_t i = 0; i < ids.size(); ++i) {
    ++occurrences_[ids[i]];
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      ++joint_[ids[i]][ids[j]];
      ++joint_[ids[j]][ids[i]];
    }
  }
  ++events_;
}

bool AttributeModel::has_attribute(std::string_view token) const {
  return index_.find(token) != index_.end();
}

std::vector<std::string> AttributeModel::vertices() const {
  std::vector<std::string> out;
  out.reserve(index_.size());
  for (const auto& [name, _] : index_) out.push_back(name);
  return out;
}

std::uint64_t AttributeModel::occurrences(std::string_view token) const {
  return occurrences_[index_of(token)];
}

ContingencyTable AttributeModel::table(std::string_view alpha, std::string_view beta) const {
  const auto i = index_of(alpha);
  const auto j = index_of(beta);
  ContingencyTable t;
  t.a = i == j ? occurrences_[i] : joint(i, j);
  t.b = occurrences_[i] - t.a;
  t.c = occurrences_[j] - t.a;
  t.d = events_ - t.a - t.b - t.c;
  return t;
}

double AttributeModel::weight(std::string_view alpha, std::string_view beta) const {
  if (frozen_) return weight_cache_[index_of(alpha)][index_of(beta)];
  return jaccard(table(alpha, beta));
}

void AttributeModel::freeze() {
  if (frozen_) return;
  weight_cache_.assign(names_.size(), std::vector<double>(names_.size(), 0.0));
  for (std::size_t i = 0; i < names_.size(); ++i) {
    for (std::size_t j = 0; j < names_.size(); ++j) {
      weight_cache_[i][j] = jaccard(table(names_[i], names_[j]));
    }
  }
  frozen_ = true;
}

bool AttributeModel::operator==(const AttributeModel& other) const {
  if (frozen_ != other.frozen_ || events_ != other.events_ || index_.size() != other.index_.size()) {
    return false;
  }
  for (const auto& [name, id] : index_) {
    auto it = other.index_.find(name);
    if (it == other.index_.end() || occurrences_[id] != other.occurrences_[it->second]) return false;
  }
  for (const auto& [a, i] : index_) {
    for (const auto& [b, j] : index_) {
      if (joint(i, j) != other.joint(other.index_.at(a), other.index_.at(b))) return false;
    }
  }
  return true;
}

// ---- persistence ----------------------------------------------------------

std::string AttributeModel::serialize() const {
  std::ostringstream out;
  out << "DANI-M v1 frozen=" << (frozen_ ? 1 : 0) << " events=" << events_ << '\n';
  auto names = vertices();
  out << "vertices " << names.size() << '\n';
  for (const auto& n : names) out << n << '\t' << occurrences_[index_.at(n)] << '\n';
  const std::size_t pairs = names.size() * (names.size() - 1) / 2;
  out << "pairs " << pairs << '\n';
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      auto t = table(names[i], names[j]);
      out << names[i] << '\t' << names[j] << '\t' << t.a << '\t' << t.b << '\t' << t.c << '\t'
          << t.d << '\n';
    }
  }
  return out.str();
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    cols.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) return cols;
    start = tab + 1;
  }
}

std::uint64_t parse_count(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw FormatError(std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

std::uint64_t parse_keyed(const std::string& line, const std::string& prefix) {
  if (line.rfind(prefix, 0) != 0) throw FormatError("expected '" + prefix + "', got '" + line + "'");
  return parse_count(line.substr(prefix.size()), prefix.c_str());
}

}  // namespace

AttributeModel AttributeModel::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) throw FormatError(std::string("truncated model: missing ") + what);
    return line;
  };

  next_line("header");
  const std::string magic = "DANI-M ";
  if (line.rfind(magic, 0) != 0) throw FormatError("not a DANI model file");
  std::istringstream header(line.substr(magic.size()));
  std::string version, frozen_field, events_field;
  header >> version >> frozen_field >> events_field;
  if (version != "v1") throw FormatError("unsupported model version '" + version + "'");
  if (frozen_field != "frozen=0" && frozen_field != "frozen=1") {
    throw FormatError("bad frozen field '" + frozen_field + "'");
  }
  const bool frozen = frozen_field == "frozen=1";
  const auto events = parse_keyed(events_field, "events=");

  AttributeModel model;
  model.events_ = events;
  const auto nvert = parse_keyed(next_line("vertex count"), "vertices ");
  std::string prev;
  for (std::uint64_t k = 0; k < nvert; ++k) {
    auto cols = split_tabs(next_line("vertex"));
    if (cols.size() != 2) throw FormatError("bad vertex line '" + line + "'");
    if (k > 0 && !(prev < cols[0])) throw FormatError("vertices not sorted at '" + cols[0] + "'");
    prev = cols[0];
    auto id = model.intern(cols[0]);
    model.occurrences_[id] = parse_count(cols[1], "occurrence count");
    if (model.occurrences_[id] > events) throw FormatError("occurrences exceed events");
  }
  if (!model.has_attribute(kUnknown)) throw FormatError("model lacks the null class");
  if (model.names_.size() != nvert) throw FormatError("vertex list must include 'unknown' exactly once");

  const auto npairs = parse_keyed(next_line("pair count"), "pairs ");
  if (npairs != nvert * (nvert - 1) / 2) throw FormatError("pair count does not match vertices");
  std::pair<std::string, std::string> prev_pair;
  for (std::uint64_t k = 0; k < npairs; ++k) {
    auto cols = split_tabs(next_line("pair"));
    if (cols.size() != 6) throw FormatError("bad pair line '" + line + "'");
    std::pair<std::string, std::string> key{cols[0], cols[1]};
    if (!(cols[0] < cols[1]) || (k > 0 && !(prev_pair < key))) {
      throw FormatError("pairs not sorted at '" + line + "'");
    }
    prev_pair = key;
    const auto i = model.index_of(cols[0]);
    const auto j = model.index_of(cols[1]);
    ContingencyTable t{parse_count(cols[2], "a"), parse_count(cols[3], "b"),
                       parse_count(cols[4], "c"), parse_count(cols[5], "d")};
    if (t.a + t.b != model.occurrences_[i] || t.a + t.c != model.occurrences_[j] ||
        t.a + t.b + t.c + t.d != events) {
      throw FormatError("inconsistent counts for pair " + cols[0] + "/" + cols[1]);
    }
    model.joint_[i][j] = model.joint_[j][i] = t.a;
  }
  if (std::getline(in, line) && !line.empty()) throw FormatError("trailing data after pairs");
  if (frozen) model.freeze();
  return model;
}

void AttributeModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write model " + path.string());
  out << serialize();
  if (!out) throw IoError("write failed: " + path.string());
}

AttributeModel AttributeModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace dani
