#include "diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "canon.hpp"

namespace zxmw {

namespace {

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Z: return "Z";
    case NodeKind::X: return "X";
    case NodeKind::H: return "H";
    default: return "B";
  }
}

std::string endpoint_str(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Node: return "n" + std::to_string(e.index);
    case Endpoint::Input: return "i" + std::to_string(e.index);
    default: return "o" + std::to_string(e.index);
  }
}

std::string serialize(const ZXDiagram& d) {
  std::ostringstream os;
  os << "in=" << d.n_inputs << ";out=" << d.n_outputs << ";loops=" << d.loops << ";";
  for (const auto& n : d.nodes) {
    os << kind_name(n.kind);
    if (n.kind == NodeKind::Z || n.kind == NodeKind::X) os << "(" << n.phase.str() << ")";
    os << "|";
  }
  os << ";";
  for (const auto& [a, b] : d.wires) os << "(" << endpoint_str(a) << "," << endpoint_str(b) << ")";
  return os.str();
}

}  // namespace

int ZXDiagram::degree(int node) const {
  int deg = 0;
  for (const auto& [a, b] : wires) {
    if (a.kind == Endpoint::Node && a.index == node) ++deg;
    if (b.kind == Endpoint::Node && b.index == node) ++deg;
  }
  return deg;
}

int ZXDiagram::boundary_degree(const Endpoint& bp) const {
  int deg = 0;
  for (const auto& [a, b] : wires) {
    if (a == bp) ++deg;
    if (b == bp) ++deg;
  }
  return deg;
}

void validate(const ZXDiagram& d) {
  if (d.n_inputs < 0 || d.n_outputs < 0 || d.loops < 0)
    throw std::invalid_argument("negative boundary/loop count");
  auto check_ep = [&](const Endpoint& e) {
    int limit = e.kind == Endpoint::Node     ? int(d.nodes.size())
                : e.kind == Endpoint::Input  ? d.n_inputs
                                             : d.n_outputs;
    if (e.index < 0 || e.index >= limit)
      throw std::invalid_argument("wire endpoint out of range: " + endpoint_str(e));
  };
  for (const auto& [a, b] : d.wires) {
    check_ep(a);
    check_ep(b);
  }
  for (int k = 0; k < d.n_inputs; ++k)
    if (d.boundary_degree(input_ep(k)) != 1)
      throw std::invalid_argument("input i" + std::to_string(k + 1) + " must have degree 1");
  for (int k = 0; k < d.n_outputs; ++k)
    if (d.boundary_degree(output_ep(k)) != 1)
      throw std::invalid_argument("output o" + std::to_string(k + 1) + " must have degree 1");
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    int deg = d.degree(int(i));
    if (d.nodes[i].kind == NodeKind::H && deg != 2)
      throw std::invalid_argument("H box must have degree 2");
    if (d.nodes[i].kind == NodeKind::Diamond && deg != 0)
      throw std::invalid_argument("diamond must have degree 0");
    if (!d.splits.empty()) {
      auto [in, out] = d.splits[i];
      if (in < 0 || out < 0 || in + out != deg)
        throw std::invalid_argument("declared arity differs from incident wires on node " +
                                    std::to_string(i));
    }
  }
  if (!d.splits.empty() && d.splits.size() != d.nodes.size())
    throw std::invalid_argument("splits list length mismatch");
}

CanonicalDiagram canonicalize(const ZXDiagram& d) {
  validate(d);
  int N = int(d.nodes.size());
  Structure st;
  st.n = N + d.n_inputs + d.n_outputs;

  // colors: boundary points are singletons in fixed order; nodes colored by
  // their (kind, phase) descriptor rank — data-determined, hence stable
  // across separately built diagrams
  std::set<std::pair<int, std::pair<std::int64_t, std::int64_t>>> descs;
  auto desc_of = [](const ZXNode& n) {
    Rational r = (n.kind == NodeKind::Z || n.kind == NodeKind::X) ? n.phase.pi_multiple()
                                                                  : Rational(0);
    return std::make_pair(int(n.kind), std::make_pair(r.num, r.den));
  };
  for (const auto& n : d.nodes) descs.insert(desc_of(n));
  std::map<std::pair<int, std::pair<std::int64_t, std::int64_t>>, int> desc_rank;
  int rank = 0;
  for (const auto& de : descs) desc_rank[de] = rank++;

  st.colors.resize(st.n);
  int boundary_colors = d.n_inputs + d.n_outputs;
  for (int i = 0; i < N; ++i) st.colors[i] = boundary_colors + desc_rank[desc_of(d.nodes[i])];
  for (int k = 0; k < d.n_inputs; ++k) st.colors[N + k] = k;
  for (int k = 0; k < d.n_outputs; ++k) st.colors[N + d.n_inputs + k] = d.n_inputs + k;

  auto vid = [&](const Endpoint& e) {
    switch (e.kind) {
      case Endpoint::Node: return e.index;
      case Endpoint::Input: return N + e.index;
      default: return N + d.n_inputs + e.index;
    }
  };
  for (const auto& [a, b] : d.wires) {
    st.facts.push_back({0, {vid(a), vid(b)}});
    st.facts.push_back({0, {vid(b), vid(a)}});
  }
  CanonResult canon = canonical_labeling(st);

  // canonical node order = canonical-id order restricted to nodes
  std::vector<int> order(N);
  for (int i = 0; i < N; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return canon.relabel[a] < canon.relabel[b]; });
  std::vector<int> node_perm(N);
  for (int pos = 0; pos < N; ++pos) node_perm[order[pos]] = pos;

  CanonicalDiagram out;
  out.node_perm = node_perm;
  out.diagram.n_inputs = d.n_inputs;
  out.diagram.n_outputs = d.n_outputs;
  out.diagram.loops = d.loops;
  for (int pos = 0; pos < N; ++pos) out.diagram.nodes.push_back(d.nodes[order[pos]]);
  if (!d.splits.empty())
    for (int pos = 0; pos < N; ++pos) out.diagram.splits.push_back(d.splits[order[pos]]);
  auto map_ep = [&](Endpoint e) {
    if (e.kind == Endpoint::Node) e.index = node_perm[e.index];
    return e;
  };
  for (const auto& [a, b] : d.wires) {
    Endpoint x = map_ep(a), y = map_ep(b);
    if (y < x) std::swap(x, y);
    out.diagram.wires.emplace_back(x, y);
  }
  std::sort(out.diagram.wires.begin(), out.diagram.wires.end());
  out.key = serialize(out.diagram);
  return out;
}

std::string diagram_key(const ZXDiagram& d) { return canonicalize(d).key; }

ZXDiagram stack(const ZXDiagram& d1, const ZXDiagram& d2) {
  validate(d1);
  validate(d2);
  ZXDiagram out;
  out.nodes = d1.nodes;
  out.nodes.insert(out.nodes.end(), d2.nodes.begin(), d2.nodes.end());
  out.n_inputs = d1.n_inputs + d2.n_inputs;
  out.n_outputs = d1.n_outputs + d2.n_outputs;
  out.loops = d1.loops + d2.loops;
  if (!d1.splits.empty() || !d2.splits.empty()) {
    auto s1 = d1.splits.empty() ? std::vector<std::pair<int, int>>(d1.nodes.size(), {0, 0})
                                : d1.splits;
    auto s2 = d2.splits.empty() ? std::vector<std::pair<int, int>>(d2.nodes.size(), {0, 0})
                                : d2.splits;
    // derive missing splits as all-output so validate stays satisfied
    if (d1.splits.empty())
      for (std::size_t i = 0; i < s1.size(); ++i) s1[i] = {0, d1.degree(int(i))};
    if (d2.splits.empty())
      for (std::size_t i = 0; i < s2.size(); ++i) s2[i] = {0, d2.degree(int(i))};
    out.splits = s1;
    out.splits.insert(out.splits.end(), s2.begin(), s2.end());
  }
  int node_off = int(d1.nodes.size());
  out.wires = d1.wires;
  for (auto [a, b] : d2.wires) {
    auto shift = [&](Endpoint e) {
      if (e.kind == Endpoint::Node) e.index += node_off;
      else if (e.kind == Endpoint::Input) e.index += d1.n_inputs;
      else e.index += d1.n_outputs;
      return e;
    };
    out.wires.emplace_back(shift(a), shift(b));
  }
  return out;
}

int eliminate_junctions(std::vector<std::pair<GlueEp, GlueEp>>& wires, int njunctions) {
  int loops = 0;
  for (int j = 0; j < njunctions; ++j) {
    std::vector<std::pair<int, int>> hits;  // (wire index, end 0/1)
    for (std::size_t w = 0; w < wires.size(); ++w) {
      if (wires[w].first.junction && wires[w].first.jid == j) hits.emplace_back(int(w), 0);
      if (wires[w].second.junction && wires[w].second.jid == j) hits.emplace_back(int(w), 1);
    }
    if (hits.size() != 2) throw std::logic_error("glue: junction degree != 2");
    auto [w1, e1] = hits[0];
    auto [w2, e2] = hits[1];
    if (w1 == w2) {
      // both ends of one wire meet at this junction: closed loop
      loops++;
      wires.erase(wires.begin() + w1);
      continue;
    }
    GlueEp a = e1 == 0 ? wires[w1].second : wires[w1].first;
    GlueEp b = e2 == 0 ? wires[w2].second : wires[w2].first;
    wires.erase(wires.begin() + std::max(w1, w2));
    wires.erase(wires.begin() + std::min(w1, w2));
    wires.emplace_back(a, b);
  }
  for (const auto& [a, b] : wires)
    if (a.junction || b.junction) throw std::logic_error("glue: junction survived");
  return loops;
}

ZXDiagram compose(const ZXDiagram& d1, const ZXDiagram& d2) {
  validate(d1);
  validate(d2);
  if (d1.n_outputs != d2.n_inputs)
    throw std::invalid_argument("compose: arity mismatch (" + std::to_string(d1.n_outputs) +
                                " outputs vs " + std::to_string(d2.n_inputs) + " inputs)");
  ZXDiagram out;
  out.nodes = d1.nodes;
  out.nodes.insert(out.nodes.end(), d2.nodes.begin(), d2.nodes.end());
  out.n_inputs = d1.n_inputs;
  out.n_outputs = d2.n_outputs;
  out.loops = d1.loops + d2.loops;
  int node_off = int(d1.nodes.size());

  std::vector<std::pair<GlueEp, GlueEp>> wires;
  auto from1 = [&](const Endpoint& e) {
    if (e.kind == Endpoint::Output) return GlueEp{true, e.index, {}};
    return GlueEp{false, 0, e};
  };
  auto from2 = [&](Endpoint e) {
    if (e.kind == Endpoint::Input) return GlueEp{true, e.index, {}};
    if (e.kind == Endpoint::Node) e.index += node_off;
    return GlueEp{false, 0, e};
  };
  for (const auto& [a, b] : d1.wires) wires.emplace_back(from1(a), from1(b));
  for (const auto& [a, b] : d2.wires) wires.emplace_back(from2(a), from2(b));

  out.loops += eliminate_junctions(wires, d1.n_outputs);
  for (const auto& [a, b] : wires) out.wires.emplace_back(a.real, b.real);
  return out;
}

ZXDiagram color_invert(const ZXDiagram& d) {
  ZXDiagram out = d;
  for (auto& n : out.nodes) {
    if (n.kind == NodeKind::Z) n.kind = NodeKind::X;
    else if (n.kind == NodeKind::X) n.kind = NodeKind::Z;
  }
  return out;
}

namespace {

struct ExprParser {
  const std::string& s;
  std::size_t pos = 0;

  struct Decl {
    std::string head;               // Z, X, H, B, W, L
    std::vector<std::string> args;  // raw argument strings
  };
  std::vector<Decl> decls;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat_tensor() {
    skip_ws();
    if (pos < s.size() && s[pos] == '*') {
      ++pos;
      return true;
    }
    // UTF-8 circled times
    if (pos + 2 < s.size() && (unsigned char)s[pos] == 0xE2 && (unsigned char)s[pos + 1] == 0x8A &&
        (unsigned char)s[pos + 2] == 0x97) {
      pos += 3;
      return true;
    }
    return false;
  }
  void factor() {
    skip_ws();
    if (pos < s.size() && s[pos] == '(') {
      ++pos;
      expression();
      skip_ws();
      if (pos >= s.size() || s[pos] != ')')
        throw std::invalid_argument("zx expression: missing ')'");
      ++pos;
      return;
    }
    std::string head;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
      head += s[pos];
      ++pos;
    }
    if (head.empty()) throw std::invalid_argument("zx expression: expected generator");
    Decl d;
    d.head = head;
    skip_ws();
    if (pos < s.size() && s[pos] == '[') {
      ++pos;
      std::string arg;
      int depth = 0;
      while (pos < s.size()) {
        char c = s[pos];
        if (c == '[') depth++;
        if (c == ']' && depth == 0) break;
        if (c == ']') depth--;
        if (c == ',' && depth == 0) {
          d.args.push_back(arg);
          arg.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
          arg += c;
        }
        ++pos;
      }
      if (pos >= s.size()) throw std::invalid_argument("zx expression: missing ']'");
      ++pos;
      if (!arg.empty() || !d.args.empty()) d.args.push_back(arg);
    }
    decls.push_back(std::move(d));
  }
  void expression() {
    factor();
    while (true) {
      std::size_t save = pos;
      if (!eat_tensor()) break;
      skip_ws();
      if (pos >= s.size() || s[pos] == ')') {
        pos = save;
        break;
      }
      factor();
    }
  }
};

bool is_boundary_name(const std::string& name, char prefix, int& index) {
  if (name.size() < 2 || name[0] != prefix) return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  index = std::stoi(name.substr(1)) - 1;
  return index >= 0;
}

int parse_count(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != text.size() || v < 0) throw std::invalid_argument(text);
    return v;
  } catch (...) {
    throw std::invalid_argument("zx expression: bad " + what + ": " + text);
  }
}

}  // namespace

ZXDiagram parse_diagram(const std::string& text) {
  ZXDiagram d;
  {
    // empty text (or the scalar unit "1") denotes the empty diagram
    std::string trimmed;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty() || trimmed == "1") return d;
  }
  ExprParser p{text};
  p.expression();
  p.skip_ws();
  if (p.pos != text.size())
    throw std::invalid_argument("zx expression: trailing input at offset " +
                                std::to_string(p.pos));

  std::map<std::string, int> names;  // declared name -> node index
  d.splits.clear();
  std::vector<std::pair<std::string, std::string>> wire_names;
  for (const auto& decl : p.decls) {
    if (decl.head == "W") {
      if (decl.args.size() != 2)
        throw std::invalid_argument("W takes exactly two endpoints");
      wire_names.emplace_back(decl.args[0], decl.args[1]);
      continue;
    }
    if (decl.head == "L") {
      if (!decl.args.empty()) throw std::invalid_argument("L takes no arguments");
      d.loops++;
      continue;
    }
    ZXNode node;
    std::pair<int, int> split{0, 0};
    if (decl.head == "Z" || decl.head == "X") {
      node.kind = decl.head == "Z" ? NodeKind::Z : NodeKind::X;
      if (decl.args.size() != 3 && decl.args.size() != 4)
        throw std::invalid_argument(decl.head + " takes name, in, out[, phase]");
      split.first = parse_count(decl.args[1], "input arity");
      split.second = parse_count(decl.args[2], "output arity");
      if (decl.args.size() == 4) {
        auto ph = Phase::parse(decl.args[3]);
        if (!ph) throw std::invalid_argument("bad phase: " + decl.args[3]);
        node.phase = *ph;
      }
    } else if (decl.head == "H") {
      node.kind = NodeKind::H;
      if (decl.args.size() != 1) throw std::invalid_argument("H takes a single name");
      split = {1, 1};
    } else if (decl.head == "B") {
      node.kind = NodeKind::Diamond;
      if (decl.args.size() != 1) throw std::invalid_argument("B takes a single name");
    } else {
      throw std::invalid_argument("unknown generator: " + decl.head);
    }
    const std::string& name = decl.args[0];
    int idx;
    if (is_boundary_name(name, 'i', idx) || is_boundary_name(name, 'o', idx))
      throw std::invalid_argument("node name collides with boundary: " + name);
    if (!names.emplace(name, int(d.nodes.size())).second)
      throw std::invalid_argument("duplicate node name: " + name);
    d.nodes.push_back(node);
    d.splits.push_back(split);
  }

  auto resolve = [&](const std::string& name) {
    auto it = names.find(name);
    if (it != names.end()) return node_ep(it->second);
    int idx;
    if (is_boundary_name(name, 'i', idx)) {
      d.n_inputs = std::max(d.n_inputs, idx + 1);
      return input_ep(idx);
    }
    if (is_boundary_name(name, 'o', idx)) {
      d.n_outputs = std::max(d.n_outputs, idx + 1);
      return output_ep(idx);
    }
    throw std::invalid_argument("unknown wire endpoint: " + name);
  };
  for (const auto& [a, b] : wire_names) d.wires.emplace_back(resolve(a), resolve(b));
  validate(d);
  return d;
}

std::string render_diagram(const ZXDiagram& d) {
  validate(d);
  if (d.nodes.empty() && d.wires.empty() && d.loops == 0 && d.n_inputs == 0 &&
      d.n_outputs == 0)
    return "1";
  bool have_splits = d.splits.size() == d.nodes.size();
  std::vector<std::string> parts;
  std::vector<std::string> node_names(d.nodes.size());
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const ZXNode& n = d.nodes[i];
    char prefix = n.kind == NodeKind::Z ? 'z'
                  : n.kind == NodeKind::X ? 'x'
                  : n.kind == NodeKind::H ? 'h'
                                          : 'd';
    node_names[i] = std::string(1, prefix) + std::to_string(i + 1);
    std::ostringstream os;
    if (n.kind == NodeKind::Z || n.kind == NodeKind::X) {
      auto [in, out] = have_splits ? d.splits[i] : std::pair<int, int>{0, d.degree(int(i))};
      os << kind_name(n.kind) << "[" << node_names[i] << "," << in << "," << out << ","
         << n.phase.str() << "]";
    } else if (n.kind == NodeKind::H) {
      os << "H[" << node_names[i] << "]";
    } else {
      os << "B[" << node_names[i] << "]";
    }
    parts.push_back(os.str());
  }
  auto ep_name = [&](const Endpoint& e) {
    switch (e.kind) {
      case Endpoint::Node: return node_names[e.index];
      case Endpoint::Input: return "i" + std::to_string(e.index + 1);
      default: return "o" + std::to_string(e.index + 1);
    }
  };
  for (const auto& [a, b] : d.wires)
    parts.push_back("W[" + ep_name(a) + "," + ep_name(b) + "]");
  for (int l = 0; l < d.loops; ++l) parts.push_back("L");
  std::ostringstream os;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) os << "⊗";
    os << parts[i];
  }
  return os.str();
}

std::string diagram_to_json(const ZXDiagram& d) {
  validate(d);
  nlohmann::json j;
  j["inputs"] = d.n_inputs;
  j["outputs"] = d.n_outputs;
  j["loops"] = d.loops;
  j["nodes"] = nlohmann::json::array();
  bool have_splits = d.splits.size() == d.nodes.size();
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    nlohmann::json n;
    n["kind"] = kind_name(d.nodes[i].kind);
    if (d.nodes[i].kind == NodeKind::Z || d.nodes[i].kind == NodeKind::X)
      n["phase"] = d.nodes[i].phase.str();
    if (have_splits) {
      n["in"] = d.splits[i].first;
      n["out"] = d.splits[i].second;
    }
    j["nodes"].push_back(std::move(n));
  }
  j["wires"] = nlohmann::json::array();
  auto ep_json = [](const Endpoint& e) {
    nlohmann::json o;
    o["type"] = e.kind == Endpoint::Node ? "node" : e.kind == Endpoint::Input ? "input" : "output";
    o["index"] = e.index;
    return o;
  };
  for (const auto& [a, b] : d.wires)
    j["wires"].push_back(nlohmann::json::array({ep_json(a), ep_json(b)}));
  return j.dump();
}

ZXDiagram diagram_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  ZXDiagram d;
  d.n_inputs = j.at("inputs").get<int>();
  d.n_outputs = j.at("outputs").get<int>();
  d.loops = j.value("loops", 0);
  bool any_split = false;
  for (const auto& n : j.at("nodes")) {
    ZXNode node;
    std::string kind = n.at("kind").get<std::string>();
    if (kind == "Z") node.kind = NodeKind::Z;
    else if (kind == "X") node.kind = NodeKind::X;
    else if (kind == "H") node.kind = NodeKind::H;
    else if (kind == "B") node.kind = NodeKind::Diamond;
    else throw std::invalid_argument("bad node kind: " + kind);
    if (n.contains("phase")) {
      auto ph = Phase::parse(n.at("phase").get<std::string>());
      if (!ph) throw std::invalid_argument("bad phase in json");
      node.phase = *ph;
    }
    d.nodes.push_back(node);
    if (n.contains("in")) {
      any_split = true;
      d.splits.emplace_back(n.at("in").get<int>(), n.value("out", 0));
    } else {
      d.splits.emplace_back(0, 0);
    }
  }
  if (!any_split) d.splits.clear();
  auto ep_from = [](const nlohmann::json& o) {
    std::string type = o.at("type").get<std::string>();
    int index = o.at("index").get<int>();
    if (type == "node") return node_ep(index);
    if (type == "input") return input_ep(index);
    if (type == "output") return output_ep(index);
    throw std::invalid_argument("bad endpoint type: " + type);
  };
  for (const auto& w : j.at("wires")) d.wires.emplace_back(ep_from(w.at(0)), ep_from(w.at(1)));
  // splits from json may be partial; recompute "all output" when inconsistent
  if (!d.splits.empty()) {
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
      int deg = d.degree(int(i));
      if (d.splits[i].first + d.splits[i].second != deg) d.splits[i] = {0, deg};
    }
  }
  validate(d);
  return d;
}

}  // namespace zxmw
