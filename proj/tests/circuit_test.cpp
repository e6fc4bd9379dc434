// Copyright 2026 The qsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qsched/bench.hpp"
#include "qsched/circuit.hpp"
#include "qsched/error.hpp"
#include "qsched/qasm.hpp"
#include "qsched/quirk.hpp"
#include "support.hpp"

using namespace qsched;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

const char* kBell =
    "qreg q[2]; creg c[2]; h q[0]; cx q[0],q[1]; measure q[0]->c[0]; measure q[1]->c[1];";

}  // namespace

TEST(Gates, NameTableRoundTrips) {
  for (int k = 0; k <= static_cast<int>(GateKind::BARRIER); ++k) {
    const auto kind = static_cast<GateKind>(k);
    EXPECT_EQ(gate_from_name(gate_name(kind)), kind);
  }
  EXPECT_FALSE(gate_from_name("u3").has_value());
  EXPECT_EQ(gate_arity(GateKind::CCX), 3u);
  EXPECT_EQ(gate_param_count(GateKind::RY), 1u);
  EXPECT_FALSE(is_unitary(GateKind::MEASURE));
}

TEST(Validate, RejectsBrokenInvariants) {
  Circuit c;
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::Validation);  // zero qubits
  c.num_qubits = 2;
  c.num_clbits = 1;
  c.instructions = {{GateKind::CX, {0, 0}, {}, {}}};
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::Validation);
  c.instructions = {{GateKind::H, {2}, {}, {}}};
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::Index);
  c.instructions = {{GateKind::RZ, {0}, {}, {}}};
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::Validation);
  c.instructions = {{GateKind::MEASURE, {0}, {}, 0}, {GateKind::MEASURE, {1}, {}, 0}};
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::Validation);
  c.instructions = {{GateKind::MEASURE, {0}, {}, 1}};
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::Index);
  c.instructions = {{GateKind::H, {0}, {}, 0}};
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::Validation);
  c.instructions = {{GateKind::MEASURE, {1}, {}, 0}};
  EXPECT_NO_THROW(validate(c));
  c.num_qubits = 5;
  EXPECT_EQ(code_of([&] { validate(c, 4); }), ErrorCode::Validation);
}

TEST(Qasm, ParsesBellPair) {
  const Circuit c = parse_qasm(kBell);
  EXPECT_EQ(c.num_qubits, 2u);
  EXPECT_EQ(c.num_clbits, 2u);
  ASSERT_EQ(c.instructions.size(), 4u);
  EXPECT_EQ(c.instructions[0].kind, GateKind::H);
  EXPECT_EQ(c.instructions[1].kind, GateKind::CX);
  EXPECT_EQ(c.instructions[1].qubits, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(c.instructions[3].clbit, 1u);
}

TEST(Qasm, ParsesAngleExpressions) {
  const Circuit c = parse_qasm("qreg q[1]; creg c[1]; rz(pi/2) q[0];");
  ASSERT_EQ(c.instructions.size(), 1u);
  EXPECT_EQ(c.instructions[0].kind, GateKind::RZ);
  EXPECT_DOUBLE_EQ(c.instructions[0].params[0], std::numbers::pi / 2);
  const Circuit d = parse_qasm("qreg q[1]; rx(-(3*pi - 1)/4) q[0]; ry(1.5e-1) q[0];");
  EXPECT_DOUBLE_EQ(d.instructions[0].params[0], -(3 * std::numbers::pi - 1) / 4);
  EXPECT_DOUBLE_EQ(d.instructions[1].params[0], 0.15);
  EXPECT_EQ(d.num_clbits, 0u);
}

TEST(Qasm, AcceptsHeaderCommentsAndBroadcast) {
  const Circuit c = parse_qasm(
      "OPENQASM 2.0;\n// comment\ninclude \"qelib1.inc\";\nqreg q[3];\ncreg c[3];\n"
      "h q;\nbarrier q;\nmeasure q -> c;\n");
  EXPECT_EQ(c.instructions.size(), 3u + 1u + 3u);
  EXPECT_EQ(c.instructions[3].kind, GateKind::BARRIER);
  EXPECT_EQ(c.instructions[3].qubits.size(), 3u);
  EXPECT_EQ(c.instructions[6].clbit, 2u);
}

TEST(Qasm, DuplicateOperandIsRejected) {
  const auto code = code_of([] { parse_qasm("qreg q[2]; creg c[1]; cx q[0],q[0];"); });
  EXPECT_TRUE(code == ErrorCode::Validation || code == ErrorCode::Index);
}

TEST(Qasm, ReportsErrorKinds) {
  EXPECT_EQ(code_of([] { parse_qasm("qreg q[2]; h q[2];"); }), ErrorCode::Index);
  EXPECT_EQ(code_of([] { parse_qasm("qreg q[2]; u3(0,0,0) q[0];"); }), ErrorCode::UnsupportedGate);
  EXPECT_EQ(code_of([] { parse_qasm("qreg q[1]; gate foo a { h a; }"); }),
            ErrorCode::UnsupportedGate);
  EXPECT_EQ(code_of([] { parse_qasm("qreg q[2] h q[0];"); }), ErrorCode::Syntax);
  EXPECT_EQ(code_of([] { parse_qasm("qreg q[2]; h q[0]"); }), ErrorCode::Syntax);
  EXPECT_EQ(code_of([] { parse_qasm("qreg q[1]; rz(pi/) q[0];"); }), ErrorCode::Syntax);
  EXPECT_EQ(code_of([] { parse_qasm("qreg q[1]; qreg r[1];"); }), ErrorCode::Syntax);
  EXPECT_EQ(code_of([] { parse_qasm("qreg q[1]; creg c[1]; measure q[0] -> d[0];"); }),
            ErrorCode::Syntax);
}

TEST(Qasm, SyntaxErrorsCarryPosition) {
  try {
    parse_qasm("qreg q[2];\ncreg c[2];\nh q[0] q[1];\n");
    FAIL() << "expected a syntax error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Syntax);
    EXPECT_NE(e.detail().find("line 3"), std::string::npos) << e.detail();
    EXPECT_NE(e.detail().find("column"), std::string::npos) << e.detail();
  }
}

TEST(Qasm, SerializeEmitsInstructionsInOrder) {
  const std::string text = serialize_qasm(parse_qasm(kBell));
  const auto h = text.find("h q[0];");
  const auto cx = text.find("cx q[0],q[1];");
  ASSERT_NE(h, std::string::npos);
  ASSERT_NE(cx, std::string::npos);
  EXPECT_LT(h, cx);
}

TEST(Qasm, SerializeEmptyCircuitHasOnlyRegisters) {
  Circuit c;
  c.num_qubits = 3;
  EXPECT_EQ(serialize_qasm(c), "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\n");
  EXPECT_TRUE(parse_qasm(serialize_qasm(c)).same_structure(c));
}

TEST(Qasm, RoundTripOnRandomCircuits) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Circuit c = qtest::random_circuit(rng, 1 + rng() % 6, rng() % 30);
    const Circuit back = parse_qasm(serialize_qasm(c));
    EXPECT_TRUE(back.same_structure(c)) << serialize_qasm(c);
  }
}

TEST(Qasm, RoundTripOnCorpus) {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(QSCHED_CORPUS_DIR)) {
    const Circuit c = load_circuit_file(entry.path());
    EXPECT_TRUE(parse_qasm(serialize_qasm(c)).same_structure(c)) << entry.path();
    ++seen;
  }
  EXPECT_GE(seen, 8u);
}

TEST(Depth, MatchesHandLayering) {
  EXPECT_EQ(circuit_depth(parse_qasm(kBell)), 3u);
  Circuit empty;
  empty.num_qubits = 2;
  EXPECT_EQ(circuit_depth(empty), 0u);
  // h on q0 twice then a barrier lifts q1 to level 2; the x on q1 is layer 3.
  EXPECT_EQ(circuit_depth(parse_qasm("qreg q[2]; h q[0]; h q[0]; barrier q; x q[1];")), 3u);
  EXPECT_EQ(circuit_depth(parse_qasm("qreg q[3]; h q[0]; h q[1]; h q[2];")), 1u);
  EXPECT_EQ(circuit_width(parse_qasm("qreg q[4]; creg c[1]; h q[3];")), 4u);
}

TEST(Quirk, BellFromBareJson) {
  const Circuit c = parse_quirk(R"({"cols":[["H"],["•","X"]]})");
  EXPECT_EQ(c.num_qubits, 2u);
  EXPECT_EQ(c.num_clbits, 2u);
  ASSERT_EQ(c.instructions.size(), 4u);
  EXPECT_EQ(c.instructions[1].kind, GateKind::CX);
  EXPECT_EQ(c.instructions[1].qubits, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(c.instructions[2].kind, GateKind::MEASURE);
  EXPECT_EQ(c.instructions[3].clbit, 1u);
}

TEST(Quirk, SingleCell) {
  const Circuit c = parse_quirk(R"({"cols":[["X"]]})");
  EXPECT_EQ(c.num_qubits, 1u);
  ASSERT_EQ(c.instructions.size(), 2u);
  EXPECT_EQ(c.instructions[0].kind, GateKind::X);
  EXPECT_EQ(c.instructions[1].kind, GateKind::MEASURE);
}

TEST(Quirk, ShareUrlIsPercentDecoded) {
  const std::string url =
      "https://algassert.com/quirk#circuit=%7B%22cols%22%3A%5B%5B%22H%22%5D%2C%5B%22%E2%80%A2%22%"
      "2C%22X%22%5D%5D%7D";
  EXPECT_TRUE(parse_quirk(url).same_structure(parse_quirk(R"({"cols":[["H"],["•","X"]]})")));
  EXPECT_EQ(percent_decode("a%20b%2c"), "a b,");
}

TEST(Quirk, ExplicitMeasureSuppressesMeasureAll) {
  const Circuit c = parse_quirk(R"({"cols":[["H",1,"X"],[1,1,"Measure"]]})");
  EXPECT_EQ(c.num_qubits, 3u);
  EXPECT_EQ(c.num_clbits, 3u);
  ASSERT_EQ(c.instructions.size(), 3u);
  EXPECT_EQ(c.instructions[2].kind, GateKind::MEASURE);
  EXPECT_EQ(c.instructions[2].clbit, 2u);
}

TEST(Quirk, ControlledLayouts) {
  const Circuit ccx = parse_quirk(R"({"cols":[["•","•","X"]]})");
  EXPECT_EQ(ccx.instructions[0].kind, GateKind::CCX);
  const Circuit cz = parse_quirk(R"({"cols":[["Z","•"]]})");
  EXPECT_EQ(cz.instructions[0].kind, GateKind::CZ);
  EXPECT_EQ(cz.instructions[0].qubits, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(code_of([] { parse_quirk(R"({"cols":[["•","•","•","X"]]})"); }),
            ErrorCode::UnsupportedLayout);
  EXPECT_EQ(code_of([] { parse_quirk(R"({"cols":[["•","X","X"]]})"); }),
            ErrorCode::UnsupportedLayout);
  EXPECT_EQ(code_of([] { parse_quirk(R"({"cols":[["•","Measure"]]})"); }),
            ErrorCode::UnsupportedLayout);
}

TEST(Quirk, RejectsUnknownCellsAndBadJson) {
  EXPECT_EQ(code_of([] { parse_quirk(R"({"cols":[["?"]]})"); }), ErrorCode::UnsupportedCell);
  EXPECT_EQ(code_of([] { parse_quirk(R"({"cols":[["QFT3"]]})"); }), ErrorCode::UnsupportedCell);
  EXPECT_EQ(code_of([] { parse_quirk("not json"); }), ErrorCode::Syntax);
  EXPECT_EQ(code_of([] { parse_quirk(R"({"gates":[]})"); }), ErrorCode::Syntax);
}

TEST(Quirk, TotalOnDocumentedTokens) {
  // Every single-cell column drawn from the documented set parses; the same
  // column with an undocumented token fails the same way every time.
  const std::vector<std::string> ok = {"H", "X", "Y", "Z", "S", "T", "Measure"};
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    std::string cols = "[";
    const int ncols = 1 + static_cast<int>(rng() % 6);
    for (int k = 0; k < ncols; ++k) {
      cols += (k ? ",[" : "[");
      const int rows = 1 + static_cast<int>(rng() % 4);
      for (int r = 0; r < rows; ++r) {
        const auto pick = rng() % (ok.size() + 1);
        cols += (r ? "," : "") + (pick == ok.size() ? std::string("1") : "\"" + ok[pick] + "\"");
      }
      cols += "]";
    }
    cols += "]";
    const std::string doc = "{\"cols\":" + cols + "}";
    try {
      const Circuit c = parse_quirk(doc);
      EXPECT_NO_THROW(validate(c));
    } catch (const Error& e) {
      // Only an all-identity document has no rows to speak of.
      EXPECT_EQ(e.code(), ErrorCode::Validation) << doc;
    }
  }
}
