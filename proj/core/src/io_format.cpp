#include "tubepack/io_format.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace tubepack {
namespace {

using json = nlohmann::ordered_json;

struct Token {
  std::string text;
  int line = 0;
  int col = 0;
};

std::vector<std::vector<Token>> tokenize(const std::string& text) {
  std::vector<std::vector<Token>> lines;
  int line_no = 1;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t eol = text.find('\n', i);
    if (eol == std::string::npos) eol = text.size();
    std::vector<Token> toks;
    std::size_t j = i;
    while (j < eol) {
      while (j < eol && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      if (j >= eol) break;
      std::size_t start = j;
      while (j < eol && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      toks.push_back({text.substr(start, j - start), line_no,
                      static_cast<int>(start - i) + 1});
    }
    if (!toks.empty() && toks[0].text[0] != '#') lines.push_back(std::move(toks));
    ++line_no;
    if (eol == text.size()) break;
    i = eol + 1;
  }
  return lines;
}

// Decimal with at most two fraction digits, parsed exactly via hundredths.
double parse_decimal2(const Token& t) {
  const std::string& s = t.text;
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = s[i] == '-';
    ++i;
  }
  std::int64_t whole = 0;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    whole = whole * 10 + (s[i] - '0');
    ++digits;
    ++i;
    if (digits > 12) throw ParseError("number too long: '" + s + "'", t.line, t.col);
  }
  if (digits == 0) throw ParseError("expected a number, got '" + s + "'", t.line, t.col);
  std::int64_t frac = 0;
  if (i < s.size() && s[i] == '.') {
    ++i;
    std::size_t fd = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      frac = frac * 10 + (s[i] - '0');
      ++fd;
      ++i;
    }
    if (fd == 0 || fd > 2)
      throw ParseError("expected at most two fraction digits in '" + s + "'", t.line,
                       t.col);
    if (fd == 1) frac *= 10;
  }
  if (i != s.size())
    throw ParseError("malformed number '" + s + "'", t.line, t.col);
  const std::int64_t hundredths = whole * 100 + frac;
  return (neg ? -hundredths : hundredths) / 100.0;
}

int parse_count(const Token& t) {
  const std::string& s = t.text;
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-')
    throw ParseError("count must be non-negative: '" + s + "'", t.line, t.col);
  if (s.empty()) throw ParseError("expected a count", t.line, t.col);
  long v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw ParseError("count must be an integer: '" + s + "'", t.line, t.col);
    v = v * 10 + (s[i] - '0');
    if (v > 100'000'000)
      throw ParseError("count out of range: '" + s + "'", t.line, t.col);
  }
  return static_cast<int>(v);
}

// Minimal decimal representation with at most two fraction digits.
std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

}  // namespace

InstanceDoc parse_instance(const std::string& text) {
  InstanceDoc doc;
  doc.source_text = text;

  enum class Section { None, Container, Tubes, Boxes };
  Section section = Section::None;
  bool container_seen = false, container_filled = false;
  bool tubes_seen = false, boxes_seen = false;
  std::set<std::string> tube_ids, box_ids;

  const auto lines = tokenize(text);
  for (const auto& toks : lines) {
    const Token& first = toks[0];
    if (first.text == "container" || first.text == "tubes" || first.text == "boxes") {
      if (toks.size() > 1)
        throw ParseError("unexpected token after section keyword", toks[1].line,
                         toks[1].col);
      if (first.text == "container") {
        if (container_seen) throw ParseError("duplicate container section", first.line, first.col);
        if (section != Section::None)
          throw ParseError("container section must come first", first.line, first.col);
        container_seen = true;
        section = Section::Container;
      } else if (first.text == "tubes") {
        if (tubes_seen) throw ParseError("duplicate tubes section", first.line, first.col);
        if (!container_filled || boxes_seen)
          throw ParseError("tubes section must follow the container section", first.line,
                           first.col);
        tubes_seen = true;
        section = Section::Tubes;
      } else {
        if (boxes_seen) throw ParseError("duplicate boxes section", first.line, first.col);
        if (!container_filled)
          throw ParseError("boxes section must follow the container section", first.line,
                           first.col);
        boxes_seen = true;
        section = Section::Boxes;
      }
      continue;
    }

    switch (section) {
      case Section::None:
        throw ParseError("expected 'container'", first.line, first.col);
      case Section::Container: {
        if (container_filled)
          throw ParseError("unexpected extra line in container section", first.line,
                           first.col);
        if (toks.size() != 3)
          throw ParseError("container line needs width, height and depth", first.line,
                           first.col);
        doc.container.width = parse_decimal2(toks[0]);
        doc.container.height = parse_decimal2(toks[1]);
        doc.container.depth = parse_decimal2(toks[2]);
        if (doc.container.width <= 0 || doc.container.height <= 0 ||
            doc.container.depth <= 0)
          throw NonPositiveDimension("container dimensions must be positive", first.line,
                                     first.col);
        container_filled = true;
        break;
      }
      case Section::Tubes: {
        if (toks.size() < 5 || toks.size() > 7)
          throw ParseError("tube line needs id, idiam, ediam, len, count"
                           " [socket_ediam] [value]",
                           first.line, first.col);
        TubeType t;
        t.id = toks[0].text;
        t.idiam = parse_decimal2(toks[1]);
        t.ediam = parse_decimal2(toks[2]);
        t.len = parse_decimal2(toks[3]);
        t.count = parse_count(toks[4]);
        if (toks.size() >= 6) t.socket_ediam = parse_decimal2(toks[5]);
        if (toks.size() == 7) t.unit_value = parse_decimal2(toks[6]);
        if (!tube_ids.insert(t.id).second)
          throw DuplicateId("duplicate tube id '" + t.id + "'", first.line, first.col);
        if (t.idiam < 0 || t.ediam <= t.idiam)
          throw NonPositiveDimension(
              "tube '" + t.id + "' needs 0 <= idiam < ediam", first.line, first.col);
        if (t.len <= 0)
          throw NonPositiveDimension("tube '" + t.id + "' needs len > 0", first.line,
                                     first.col);
        if (t.socket_ediam && *t.socket_ediam < t.ediam)
          throw NonPositiveDimension(
              "tube '" + t.id + "' socket diameter below external diameter", first.line,
              first.col);
        if (t.unit_value < 0)
          throw ParseError("tube '" + t.id + "' value must be non-negative", first.line,
                           first.col);
        doc.tubes.push_back(std::move(t));
        break;
      }
      case Section::Boxes: {
        if (toks.size() < 5 || toks.size() > 6)
          throw ParseError("box line needs id, width, height, depth, count [value]",
                           first.line, first.col);
        BoxType b;
        b.id = toks[0].text;
        b.width = parse_decimal2(toks[1]);
        b.height = parse_decimal2(toks[2]);
        b.depth = parse_decimal2(toks[3]);
        b.count = parse_count(toks[4]);
        if (toks.size() == 6) b.unit_value = parse_decimal2(toks[5]);
        if (!box_ids.insert(b.id).second)
          throw DuplicateId("duplicate box id '" + b.id + "'", first.line, first.col);
        if (b.width <= 0 || b.height <= 0 || b.depth <= 0)
          throw NonPositiveDimension("box '" + b.id + "' dimensions must be positive",
                                     first.line, first.col);
        if (b.unit_value < 0)
          throw ParseError("box '" + b.id + "' value must be non-negative", first.line,
                           first.col);
        doc.boxes.push_back(std::move(b));
        break;
      }
    }
  }

  const int last_line = lines.empty() ? 1 : lines.back()[0].line + 1;
  if (!container_filled) throw ParseError("missing container section", last_line, 1);
  if (doc.tubes.empty() && doc.boxes.empty())
    throw ParseError("instance has neither tubes nor boxes", last_line, 1);
  return doc;
}

std::string write_instance(const InstanceDoc& doc) {
  std::ostringstream os;
  os << "container\n"
     << fmt2(doc.container.width) << ' ' << fmt2(doc.container.height) << ' '
     << fmt2(doc.container.depth) << '\n';
  if (!doc.tubes.empty()) {
    os << "\ntubes\n";
    for (const auto& t : doc.tubes) {
      os << t.id << ' ' << fmt2(t.idiam) << ' ' << fmt2(t.ediam) << ' ' << fmt2(t.len)
         << ' ' << t.count;
      // value needs the socket column; default it to the plain diameter
      if (t.socket_ediam || t.unit_value != 0.0)
        os << ' ' << fmt2(t.socket_ediam ? *t.socket_ediam : t.ediam);
      if (t.unit_value != 0.0) os << ' ' << fmt2(t.unit_value);
      os << '\n';
    }
  }
  if (!doc.boxes.empty()) {
    os << "\nboxes\n";
    for (const auto& b : doc.boxes) {
      os << b.id << ' ' << fmt2(b.width) << ' ' << fmt2(b.height) << ' '
         << fmt2(b.depth) << ' ' << b.count;
      if (b.unit_value != 0.0) os << ' ' << fmt2(b.unit_value);
      os << '\n';
    }
  }
  return os.str();
}

std::string instance_digest(const InstanceDoc& doc) {
  const std::string canon = write_instance(doc);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

RingPlacement round_ring(const RingPlacement& r) {
  RingPlacement out;
  out.type = r.type;
  out.x = round2(r.x);
  out.y = round2(r.y);
  out.z = round2(r.z);
  for (const auto& c : r.children) out.children.push_back(round_ring(c));
  return out;
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

}  // namespace

SolutionDoc make_solution_doc(const InstanceDoc& instance, const Solution& sol) {
  SolutionDoc doc;
  doc.schema_version = 1;
  doc.instance_digest = instance_digest(instance);
  doc.container = instance.container;
  doc.tube_catalog = instance.tubes;
  doc.box_catalog = instance.boxes;
  for (const auto& c : sol.containers) {
    PackedContainer pc;
    for (const auto& h : c.holders) {
      Holder out = h;
      out.x = round2(h.x);
      out.y = round2(h.y);
      out.z = round2(h.z);
      out.w = round2(h.w);
      out.h = round2(h.h);
      out.d = round2(h.d);
      out.rings.clear();
      for (const auto& r : h.rings) out.rings.push_back(round_ring(r));
      for (auto& b : out.boxes) {
        b.x = round2(b.x);
        b.y = round2(b.y);
        b.z = round2(b.z);
      }
      pc.holders.push_back(std::move(out));
    }
    doc.containers.push_back(std::move(pc));
  }
  doc.unpacked_tubes = sol.unpacked_tubes;
  doc.unpacked_boxes = sol.unpacked_boxes;
  doc.containers_used = sol.metrics.containers_used;
  for (double f : sol.metrics.fill_ratio) doc.fill_ratio.push_back(round6(f));
  doc.extra_value = round2(sol.metrics.extra_value);
  return doc;
}

namespace {

json tube_to_json(const TubeType& t) {
  json j;
  j["id"] = t.id;
  j["idiam"] = round2(t.idiam);
  j["ediam"] = round2(t.ediam);
  if (t.socket_ediam)
    j["socket_ediam"] = round2(*t.socket_ediam);
  else
    j["socket_ediam"] = nullptr;
  j["len"] = round2(t.len);
  j["count"] = t.count;
  j["unit_value"] = round2(t.unit_value);
  return j;
}

json box_to_json(const BoxType& b) {
  json j;
  j["id"] = b.id;
  j["width"] = round2(b.width);
  j["height"] = round2(b.height);
  j["depth"] = round2(b.depth);
  j["count"] = b.count;
  j["unit_value"] = round2(b.unit_value);
  return j;
}

void rings_to_json(const RingPlacement& r, const std::string& parent, int& next_id,
                   json& arr) {
  const std::string id = "r" + std::to_string(next_id++);
  json j;
  j["id"] = id;
  j["type"] = r.type;
  j["x"] = r.x;
  j["y"] = r.y;
  j["z"] = r.z;
  if (parent.empty())
    j["parent"] = nullptr;
  else
    j["parent"] = parent;
  arr.push_back(std::move(j));
  for (const auto& c : r.children) rings_to_json(c, id, next_id, arr);
}

double num_at(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw SchemaError(std::string("missing or non-numeric field '") + key + "'");
  return j.at(key).get<double>();
}

std::string str_at(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw SchemaError(std::string("missing or non-string field '") + key + "'");
  return j.at(key).get<std::string>();
}

}  // namespace

std::string write_solution(const SolutionDoc& doc) {
  json root;
  root["schema_version"] = doc.schema_version;
  root["instance_digest"] = doc.instance_digest;
  root["container"] = {{"width", round2(doc.container.width)},
                       {"height", round2(doc.container.height)},
                       {"depth", round2(doc.container.depth)}};
  root["tube_catalog"] = json::array();
  for (const auto& t : doc.tube_catalog) root["tube_catalog"].push_back(tube_to_json(t));
  root["box_catalog"] = json::array();
  for (const auto& b : doc.box_catalog) root["box_catalog"].push_back(box_to_json(b));

  root["containers"] = json::array();
  for (const auto& c : doc.containers) {
    json jc;
    jc["holders"] = json::array();
    for (const auto& h : c.holders) {
      json jh;
      jh["id"] = h.id;
      jh["kind"] = h.kind == HolderKind::Tubes ? "tubes" : "boxes";
      jh["x"] = h.x;
      jh["y"] = h.y;
      jh["z"] = h.z;
      jh["w"] = h.w;
      jh["h"] = h.h;
      jh["d"] = h.d;
      if (h.kind == HolderKind::Tubes) {
        json rings = json::array();
        int next_id = 1;
        for (const auto& r : h.rings) rings_to_json(r, "", next_id, rings);
        jh["rings"] = std::move(rings);
      } else {
        json boxes = json::array();
        for (const auto& b : h.boxes) {
          json jb;
          jb["type"] = b.type;
          jb["x"] = b.x;
          jb["y"] = b.y;
          jb["z"] = b.z;
          jb["orientation"] = std::string(b.orientation.name());
          boxes.push_back(std::move(jb));
        }
        jh["boxes"] = std::move(boxes);
      }
      jc["holders"].push_back(std::move(jh));
    }
    root["containers"].push_back(std::move(jc));
  }

  json unpacked;
  unpacked["tubes"] = json::object();
  for (const auto& [id, n] : doc.unpacked_tubes) unpacked["tubes"][id] = n;
  unpacked["boxes"] = json::object();
  for (const auto& [id, n] : doc.unpacked_boxes) unpacked["boxes"][id] = n;
  root["unpacked"] = std::move(unpacked);

  json metrics;
  metrics["containers_used"] = doc.containers_used;
  metrics["fill_ratio"] = doc.fill_ratio;
  metrics["extra_value"] = doc.extra_value;
  root["metrics"] = std::move(metrics);

  // ordered_json preserves insertion order; rebuild as sorted-key json for a
  // canonical byte stream.
  nlohmann::json canonical = nlohmann::json::parse(root.dump());
  return canonical.dump(2) + "\n";
}

SolutionDoc read_solution(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("not a solution document: ") + e.what());
  }
  try {
    SolutionDoc doc;
    if (!root.contains("schema_version") || !root["schema_version"].is_number_integer())
      throw SchemaError("missing schema_version");
    doc.schema_version = root["schema_version"].get<int>();
    if (doc.schema_version != 1)
      throw SchemaError("unknown schema_version " + std::to_string(doc.schema_version));
    doc.instance_digest = str_at(root, "instance_digest");
    const auto& jc = root.at("container");
    doc.container.width = num_at(jc, "width");
    doc.container.height = num_at(jc, "height");
    doc.container.depth = num_at(jc, "depth");

    for (const auto& jt : root.at("tube_catalog")) {
      TubeType t;
      t.id = str_at(jt, "id");
      t.idiam = num_at(jt, "idiam");
      t.ediam = num_at(jt, "ediam");
      if (jt.contains("socket_ediam") && !jt.at("socket_ediam").is_null())
        t.socket_ediam = num_at(jt, "socket_ediam");
      t.len = num_at(jt, "len");
      t.count = jt.at("count").get<int>();
      t.unit_value = num_at(jt, "unit_value");
      doc.tube_catalog.push_back(std::move(t));
    }
    for (const auto& jb : root.at("box_catalog")) {
      BoxType b;
      b.id = str_at(jb, "id");
      b.width = num_at(jb, "width");
      b.height = num_at(jb, "height");
      b.depth = num_at(jb, "depth");
      b.count = jb.at("count").get<int>();
      b.unit_value = num_at(jb, "unit_value");
      doc.box_catalog.push_back(std::move(b));
    }

    for (const auto& jcont : root.at("containers")) {
      PackedContainer pc;
      for (const auto& jh : jcont.at("holders")) {
        Holder h;
        h.id = str_at(jh, "id");
        const std::string kind = str_at(jh, "kind");
        if (kind == "tubes")
          h.kind = HolderKind::Tubes;
        else if (kind == "boxes")
          h.kind = HolderKind::Boxes;
        else
          throw SchemaError("unknown holder kind '" + kind + "'");
        h.x = num_at(jh, "x");
        h.y = num_at(jh, "y");
        h.z = num_at(jh, "z");
        h.w = num_at(jh, "w");
        h.h = num_at(jh, "h");
        h.d = num_at(jh, "d");
        if (h.kind == HolderKind::Tubes) {
          // Rebuild telescoping trees; parents must precede their children.
          std::vector<RingPlacement> flat;
          std::vector<int> parent_of;
          std::map<std::string, int> idx_by_id;
          for (const auto& jr : jh.at("rings")) {
            const std::string id = str_at(jr, "id");
            if (idx_by_id.count(id))
              throw SchemaError("duplicate ring id '" + id + "'");
            RingPlacement r;
            r.type = str_at(jr, "type");
            r.x = num_at(jr, "x");
            r.y = num_at(jr, "y");
            r.z = num_at(jr, "z");
            if (!jr.contains("parent"))
              throw SchemaError("ring '" + id + "' missing parent field");
            int parent = -1;
            if (!jr.at("parent").is_null()) {
              const std::string pid = jr.at("parent").get<std::string>();
              auto it = idx_by_id.find(pid);
              if (it == idx_by_id.end())
                throw SchemaError("ring '" + id + "' references unknown parent '" +
                                  pid + "'");
              parent = it->second;
            }
            idx_by_id[id] = static_cast<int>(flat.size());
            flat.push_back(std::move(r));
            parent_of.push_back(parent);
          }
          std::vector<std::vector<int>> child_idx(flat.size());
          for (std::size_t i = 0; i < flat.size(); ++i)
            if (parent_of[i] >= 0) child_idx[parent_of[i]].push_back(static_cast<int>(i));
          std::function<RingPlacement(int)> build = [&](int i) {
            RingPlacement r = flat[i];
            r.children.clear();
            for (int c : child_idx[i]) r.children.push_back(build(c));
            return r;
          };
          for (std::size_t i = 0; i < flat.size(); ++i)
            if (parent_of[i] < 0) h.rings.push_back(build(static_cast<int>(i)));
        } else {
          for (const auto& jb : jh.at("boxes")) {
            BoxPlacement b;
            b.type = str_at(jb, "type");
            b.x = num_at(jb, "x");
            b.y = num_at(jb, "y");
            b.z = num_at(jb, "z");
            auto o = Orientation::from_name(str_at(jb, "orientation"));
            if (!o) throw SchemaError("unknown orientation '" + str_at(jb, "orientation") + "'");
            b.orientation = *o;
            h.boxes.push_back(std::move(b));
          }
        }
        pc.holders.push_back(std::move(h));
      }
      doc.containers.push_back(std::move(pc));
    }

    const auto& ju = root.at("unpacked");
    for (const auto& [id, n] : ju.at("tubes").items())
      doc.unpacked_tubes.emplace_back(id, n.get<int>());
    for (const auto& [id, n] : ju.at("boxes").items())
      doc.unpacked_boxes.emplace_back(id, n.get<int>());

    const auto& jm = root.at("metrics");
    doc.containers_used = jm.at("containers_used").get<int>();
    for (const auto& f : jm.at("fill_ratio")) doc.fill_ratio.push_back(f.get<double>());
    doc.extra_value = num_at(jm, "extra_value");
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed solution document: ") + e.what());
  }
}

}  // namespace tubepack
