#include "athena/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include <json.hpp>

namespace athena {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                         std::to_string(column)),
      line_(line),
      column_(column) {}

GateDag::GateDag(int qubit_count, std::vector<Gate> gates)
    : qubit_count_(qubit_count), gates_(std::move(gates)) {
  if (qubit_count_ < 0) throw std::invalid_argument("negative qubit count");
  const auto n = gates_.size();
  preds_.resize(n);
  succs_.resize(n);
  per_qubit_.resize(static_cast<std::size_t>(qubit_count_));
  std::vector<int> last(static_cast<std::size_t>(qubit_count_), -1);
  for (std::size_t i = 0; i < n; ++i) {
    Gate& g = gates_[i];
    g.id = static_cast<int>(i);
    const std::size_t arity = g.is_cnot() ? 2 : 1;
    if (g.qubits.size() != arity)
      throw std::invalid_argument("gate " + std::to_string(i) + " has wrong arity");
    if (g.is_cnot() && g.qubits[0] == g.qubits[1])
      throw std::invalid_argument("gate " + std::to_string(i) + " repeats a qubit");
    if (!g.is_cnot() && g.label.empty()) g.label = "u";
    if (g.is_cnot()) ++cnot_count_;
    for (int q : g.qubits) {
      if (q < 0 || q >= qubit_count_)
        throw std::invalid_argument("gate " + std::to_string(i) + " qubit out of range");
      auto& prev = last[static_cast<std::size_t>(q)];
      if (prev >= 0 && std::find(preds_[i].begin(), preds_[i].end(), prev) == preds_[i].end()) {
        preds_[i].push_back(prev);
        succs_[static_cast<std::size_t>(prev)].push_back(static_cast<int>(i));
      }
      prev = static_cast<int>(i);
      per_qubit_[static_cast<std::size_t>(q)].push_back(static_cast<int>(i));
    }
    std::sort(preds_[i].begin(), preds_[i].end());
  }
}

std::span<const int> GateDag::predecessors(int id) const {
  return preds_.at(static_cast<std::size_t>(id));
}
std::span<const int> GateDag::successors(int id) const {
  return succs_.at(static_cast<std::size_t>(id));
}
std::span<const int> GateDag::qubit_gates(int q) const {
  return per_qubit_.at(static_cast<std::size_t>(q));
}

GateDag build_dag(std::vector<Gate> gates, int qubit_count) {
  if (qubit_count < 0) {
    qubit_count = 0;
    for (const auto& g : gates)
      for (int q : g.qubits) qubit_count = std::max(qubit_count, q + 1);
  }
  return GateDag(qubit_count, std::move(gates));
}

std::vector<int> frontier(const GateDag& dag, const std::vector<bool>& done) {
  if (done.size() != dag.size()) throw std::invalid_argument("done set has wrong size");
  std::vector<int> out;
  for (std::size_t i = 0; i < dag.size(); ++i) {
    const auto preds = dag.predecessors(static_cast<int>(i));
    const bool ready = std::all_of(preds.begin(), preds.end(),
                                   [&](int p) { return done[static_cast<std::size_t>(p)]; });
    if (done[i]) {
      if (!ready) throw std::invalid_argument("done set is not dependency-closed");
      continue;
    }
    if (ready) out.push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

// Statement-level scanner for the qasm-lite subset.
class QasmScanner {
 public:
  explicit QasmScanner(std::string_view src) : src_(src) {}

  [[nodiscard]] bool at_end() {
    skip_space();
    return pos_ >= src_.size();
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  std::string word() {
    skip_space();
    const auto begin = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      advance();
    if (pos_ == begin) fail("expected identifier");
    return std::string(src_.substr(begin, pos_ - begin));
  }

  int integer() {
    skip_space();
    const auto begin = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    if (pos_ == begin) fail("expected integer");
    int value = 0;
    const auto text = src_.substr(begin, pos_ - begin);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{}) fail("integer out of range");
    return value;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= src_.size() || src_[pos_] != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  [[nodiscard]] bool peek(char c) {
    skip_space();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  // Raw text up to (not including) the next ';'.
  std::string rest_of_statement() {
    const auto begin = pos_;
    while (pos_ < src_.size() && src_[pos_] != ';') advance();
    if (pos_ >= src_.size()) fail("missing ';'");
    return std::string(src_.substr(begin, pos_ - begin));
  }

  // Balanced parenthesised parameter text including the parentheses.
  std::string parens() {
    const auto begin = pos_;
    int depth = 0;
    do {
      if (pos_ >= src_.size()) fail("unterminated parameter list");
      if (src_[pos_] == '(') ++depth;
      if (src_[pos_] == ')') --depth;
      advance();
    } while (depth > 0);
    return std::string(src_.substr(begin, pos_ - begin));
  }

  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] int column() const noexcept { return col_; }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Register {
  int offset;
  int size;
};

GateDag parse_qasm(std::string_view source) {
  QasmScanner s(source);
  std::map<std::string, Register, std::less<>> qregs;
  int total = 0;
  std::vector<Gate> gates;

  auto operand = [&]() {
    const int line = s.line();
    const int col = s.column();
    const auto name = s.word();
    const auto it = qregs.find(name);
    if (it == qregs.end()) throw ParseError("unknown register '" + name + "'", line, col);
    s.expect('[');
    const int idx = s.integer();
    s.expect(']');
    if (idx >= it->second.size)
      throw ParseError("qubit index " + std::to_string(idx) + " exceeds register size " +
                           std::to_string(it->second.size),
                       line, col);
    return it->second.offset + idx;
  };

  while (!s.at_end()) {
    const int line = s.line();
    const int col = s.column();
    const auto kw = s.word();
    if (kw == "OPENQASM" || kw == "include" || kw == "barrier" || kw == "measure") {
      (void)s.rest_of_statement();
    } else if (kw == "qreg" || kw == "creg") {
      const auto name = s.word();
      s.expect('[');
      const int size = s.integer();
      s.expect(']');
      if (kw == "qreg") {
        if (qregs.count(name)) throw ParseError("duplicate register '" + name + "'", line, col);
        qregs.emplace(name, Register{total, size});
        total += size;
      }
    } else if (kw == "cx" || kw == "CX") {
      const int a = operand();
      s.expect(',');
      const int b = operand();
      if (a == b) throw ParseError("cx operands must differ", line, col);
      gates.push_back(make_cnot(a, b));
    } else {
      std::string label = kw;
      if (s.peek('(')) label += s.parens();
      const int q = operand();
      gates.push_back(make_unary(q, std::move(label)));
    }
    s.expect(';');
  }
  return GateDag(total, std::move(gates));
}

GateDag parse_json(std::string_view source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(source);
  } catch (const nlohmann::json::parse_error& e) {
    // Byte offset into the text; report as line/column.
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < source.size(); ++i) {
      if (source[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("malformed json", line, col);
  }
  if (!doc.is_object() || !doc.contains("qubits") || !doc.contains("gates"))
    throw ParseError("json circuit needs 'qubits' and 'gates'", 1, 1);
  const int n = doc.at("qubits").get<int>();
  if (n < 0) throw ParseError("negative qubit count", 1, 1);
  std::vector<Gate> gates;
  const auto& arr = doc.at("gates");
  gates.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& g = arr[i];
    const int at = static_cast<int>(i);
    // Positions for semantic errors are (gate index, 0).
    if (g.contains("id") && g.at("id").get<int>() != at)
      throw ParseError("gate ids must be dense and in order", at, 0);
    const auto kind = g.at("kind").get<std::string>();
    const auto qs = g.at("q").get<std::vector<int>>();
    for (int q : qs)
      if (q < 0 || q >= n)
        throw ParseError("qubit " + std::to_string(q) + " outside 0.." + std::to_string(n - 1),
                         at, 0);
    if (kind == "cnot" || kind == "cx") {
      if (qs.size() != 2 || qs[0] == qs[1]) throw ParseError("cnot needs two distinct qubits", at, 0);
      gates.push_back(make_cnot(qs[0], qs[1]));
    } else if (kind == "u") {
      if (qs.size() != 1) throw ParseError("unary gate needs one qubit", at, 0);
      gates.push_back(make_unary(qs[0], g.value("label", std::string("u"))));
    } else {
      throw ParseError("unknown gate kind '" + kind + "'", at, 0);
    }
  }
  return GateDag(n, std::move(gates));
}

}  // namespace

GateDag parse_circuit(std::string_view source, CircuitFormat format) {
  return format == CircuitFormat::Json ? parse_json(source) : parse_qasm(source);
}

std::string emit_circuit(const GateDag& dag, CircuitFormat format) {
  if (format == CircuitFormat::Json) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto& g : dag.gates()) {
      if (g.is_cnot())
        gates.push_back({{"kind", "cnot"}, {"q", g.qubits}});
      else
        gates.push_back({{"kind", "u"}, {"q", g.qubits}, {"label", g.label}});
    }
    nlohmann::json doc{{"qubits", dag.qubit_count()}, {"gates", std::move(gates)}};
    return doc.dump() + "\n";
  }
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << dag.qubit_count() << "];\n";
  for (const auto& g : dag.gates()) {
    if (g.is_cnot())
      out << "cx q[" << g.qubits[0] << "],q[" << g.qubits[1] << "];\n";
    else
      out << g.label << " q[" << g.qubits[0] << "];\n";
  }
  return out.str();
}

CircuitFormat circuit_format_for_path(std::string_view path) {
  return path.ends_with(".json") ? CircuitFormat::Json : CircuitFormat::QasmLite;
}

}  // namespace athena
