#include "amc/circuit.hpp"
#include "amc/errors.hpp"

#include <charconv>
#include <optional>
#include <unordered_map>

namespace amc {

namespace {

bool valid_name(std::string_view s) {
  if (s.empty()) {
    return false;
  }
  const auto alpha = [](char ch) { return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_'; };
  const auto digit = [](char ch) { return ch >= '0' && ch <= '9'; };
  if (!alpha(s[0])) {
    return false;
  }
  for (char ch : s.substr(1)) {
    if (!alpha(ch) && !digit(ch)) {
      return false;
    }
  }
  return true;
}

std::vector<std::string_view> tokens(std::string_view line, std::size_t lineno) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto sp = line.find(' ', pos);
    const auto tok = line.substr(pos, sp == std::string_view::npos ? std::string_view::npos : sp - pos);
    if (tok.empty()) {
      throw ParseError(lineno, "tokens must be separated by single spaces");
    }
    out.push_back(tok);
    if (sp == std::string_view::npos) {
      return out;
    }
    pos = sp + 1;
  }
}

class CircuitParser {
public:
  explicit CircuitParser(std::string_view text) : text_(text) {}

  Circuit run() {
    std::optional<Circuit> circuit;
    bool outputs_seen = false;
    std::string_view line;
    std::size_t lineno = 0;
    while (next_line(line, lineno)) {
      if (!line.empty() && line[0] == '#') {
        continue;
      }
      if (line.empty()) {
        throw ParseError(lineno, "empty line");
      }
      if (outputs_seen) {
        throw ParseError(lineno, "content after .outputs");
      }
      const auto tok = tokens(line, lineno);
      if (!circuit) {
        circuit.emplace(parse_inputs(tok, lineno));
        continue;
      }
      if (tok[0] == ".outputs") {
        parse_outputs(*circuit, tok, lineno);
        outputs_seen = true;
        continue;
      }
      parse_gate(*circuit, tok, lineno);
    }
    if (!circuit) {
      throw ParseError(1, "missing .inputs directive");
    }
    if (!outputs_seen) {
      throw ParseError(lineno + 1, "missing .outputs directive");
    }
    if (!terminated_) {
      throw ParseError(lineno, "missing final newline");
    }
    return std::move(*circuit);
  }

private:
  bool next_line(std::string_view& line, std::size_t& lineno) {
    if (pos_ >= text_.size()) {
      return false;
    }
    const auto nl = text_.find('\n', pos_);
    if (nl == std::string_view::npos) {
      line = text_.substr(pos_);
      pos_ = text_.size();
      terminated_ = false;
    } else {
      line = text_.substr(pos_, nl - pos_);
      pos_ = nl + 1;
    }
    ++lineno;
    return true;
  }

  Circuit parse_inputs(const std::vector<std::string_view>& tok, std::size_t lineno) {
    if (tok[0] != ".inputs" || tok.size() != 2) {
      throw ParseError(lineno, "expected \".inputs k\"");
    }
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(tok[1].data(), tok[1].data() + tok[1].size(), k);
    if (ec != std::errc{} || ptr != tok[1].data() + tok[1].size()) {
      throw ParseError(lineno, "bad input count \"" + std::string(tok[1]) + "\"");
    }
    Circuit c(k);
    for (std::size_t i = 0; i < k; ++i) {
      ids_.emplace(c.name(static_cast<GateId>(i)), static_cast<GateId>(i));
    }
    return c;
  }

  GateId resolve(std::string_view name, std::size_t lineno) const {
    const auto it = ids_.find(std::string(name));
    if (it == ids_.end()) {
      throw ParseError(lineno, "undefined name \"" + std::string(name) + "\"");
    }
    return it->second;
  }

  void parse_gate(Circuit& c, const std::vector<std::string_view>& tok, std::size_t lineno) {
    if (tok.size() < 3 || tok[1] != "=") {
      throw ParseError(lineno, "expected \"<name> = <kind> ...\"");
    }
    const auto name = tok[0];
    if (!valid_name(name)) {
      throw ParseError(lineno, "bad name \"" + std::string(name) + "\"");
    }
    if (ids_.contains(std::string(name))) {
      throw ParseError(lineno, "duplicate definition of \"" + std::string(name) + "\"");
    }
    GateId id = 0;
    const auto kind = tok[2];
    if (kind == "ONE") {
      if (tok.size() != 3) {
        throw ParseError(lineno, "ONE takes no operands");
      }
      id = c.add_one(std::string(name));
    } else if (kind == "XOR" || kind == "AND") {
      if (tok.size() != 5) {
        throw ParseError(lineno, std::string(kind) + " takes exactly two operands");
      }
      const auto a = resolve(tok[3], lineno);
      const auto b = resolve(tok[4], lineno);
      id = kind == "XOR" ? c.add_xor(a, b, std::string(name)) : c.add_and(a, b, std::string(name));
    } else {
      throw ParseError(lineno, "bad token \"" + std::string(kind) + "\"");
    }
    ids_.emplace(std::string(name), id);
  }

  void parse_outputs(Circuit& c, const std::vector<std::string_view>& tok, std::size_t lineno) {
    if (tok.size() < 2) {
      throw ParseError(lineno, ".outputs needs at least one name");
    }
    for (std::size_t k = 1; k < tok.size(); ++k) {
      c.add_output(resolve(tok[k], lineno));
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  bool terminated_ = true;
  std::unordered_map<std::string, GateId> ids_;
};

} // namespace

Circuit parse_circuit(std::string_view text) { return CircuitParser(text).run(); }

std::string serialize_circuit(const Circuit& c) {
  if (c.outputs().empty()) {
    throw std::logic_error("circuit has no outputs");
  }
  std::string out = ".inputs " + std::to_string(c.n_inputs()) + '\n';
  for (std::size_t i = c.n_inputs(); i < c.size(); ++i) {
    const auto id = static_cast<GateId>(i);
    const auto& g = c.gate(id);
    out += c.name(id);
    switch (g.kind) {
    case GateKind::One:
      out += " = ONE\n";
      break;
    case GateKind::Xor:
      out += " = XOR " + c.name(g.a) + ' ' + c.name(g.b) + '\n';
      break;
    case GateKind::And:
      out += " = AND " + c.name(g.a) + ' ' + c.name(g.b) + '\n';
      break;
    case GateKind::Input:
      throw std::logic_error("input gate after the input block");
    }
  }
  out += ".outputs";
  for (auto id : c.outputs()) {
    out += ' ';
    out += c.name(id);
  }
  out += '\n';
  return out;
}

} // namespace amc
