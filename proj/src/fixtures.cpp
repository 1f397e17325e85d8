#include "magmalab/fixtures.hpp"

namespace magmalab {

namespace {

Model make_model(int n, std::vector<int> mul, std::vector<int> ldiv,
                 std::vector<int> rdiv) {
  Model m;
  m.size = n;
  m.tables = {std::move(mul), std::move(ldiv), std::move(rdiv)};
  return m;
}

// clang-format off
Model table1() {
  return make_model(3,
      {0, 1, 2,
       2, 0, 1,
       1, 2, 0},
      {0, 1, 2,
       1, 2, 0,
       2, 0, 1},
      {0, 1, 2,
       2, 0, 1,
       1, 2, 0});
}

Model table2() {
  return make_model(2,
      {0, 1,
       1, 0},
      {0, 1,
       1, 0},
      {1, 0,
       0, 1});
}

Model table3() {
  return make_model(4,
      {0, 1, 1, 0,
       0, 1, 1, 0,
       3, 2, 2, 3,
       3, 2, 2, 3},
      {0, 1, 1, 0,
       0, 1, 1, 0,
       3, 2, 2, 3,
       3, 2, 2, 3},
      {0, 2, 1, 0,
       0, 1, 1, 0,
       0, 2, 2, 0,
       3, 1, 1, 3});
}

Model table4() {
  return make_model(2,
      {0, 1,
       0, 1},
      {0, 1,
       0, 1},
      {0, 0,
       0, 1});
}
// clang-format on

const char* kQuasigroup =
    "QG1: x \\ (x * y) = y\n"
    "QG2: (x * y) / y = x\n"
    "QG3: x * (x \\ y) = y\n"
    "QG4: (x / y) * y = x\n";

const char* kLoopExtra = "LE: x \\ x = y / y\n";

const char* kRectAxioms =
    "Q1: x \\ (x * x) = x\n"
    "Q2: (x * x) / x = x\n"
    "Q3: x * (x \\ y) = x \\ (x * y)\n"
    "Q4: (x / y) * y = (x * y) / y\n"
    "Q5: (x \\ y) \\ ((x \\ y) * (z * u)) = (x \\ (x * z)) * u\n"
    "Q6: ((x * y) * (z / u)) / (z / u) = x * ((y * u) / u)\n";

const char* kLAxiom =
    "L: x \\ (x * (y \\ y)) = ((x / x) * y) / y\n";

const char* kKrapezTail =
    "K5: (x * y) \\ ((x * y) * z) = x \\ (x * z)\n"
    "K6: (x \\ y) \\ ((x \\ y) * z) = x \\ (x * z)\n"
    "K7: (x / y) \\ ((x / y) * z) = x \\ (x * z)\n"
    "K8: x * (y \\ (y * z)) = x * z\n"
    "K9: ((x * y) / y) * z = x * z\n"
    "K10: (x * (y * z)) / (y * z) = (x * z) / z\n"
    "K11: (x * (y \\ z)) / (y \\ z) = (x * z) / z\n"
    "K12: (x * (y / z)) / (y / z) = (x * z) / z\n"
    "K13: x \\ (x * ((y * z) / z)) = ((x \\ (x * y)) * z) / z\n"
    "K14: (x \\ (x * y)) * z = x \\ (x * (y * z))\n"
    "K15: x * ((y * z) / z) = ((x * y) * z) / z\n";

const char* kKrapez8Tail =
    "K6: (x \\ y) \\ ((x \\ y) * z) = x \\ (x * z)\n"
    "K12: (x * (y / z)) / (y / z) = (x * z) / z\n"
    "K14: (x \\ (x * y)) * z = x \\ (x * (y * z))\n"
    "K15: x * ((y * z) / z) = ((x * y) * z) / z\n";

const char* kLeftZero =
    "LZ1: x * y = x\n"
    "LZ2: x \\ y = x * y\n"
    "LZ3: x / y = x * y\n";

const char* kRightZero =
    "RZ1: x * y = y\n"
    "RZ2: x \\ y = x * y\n"
    "RZ3: x / y = x * y\n";

std::string first_n(const char* text, int count) {
  std::string out;
  const char* p = text;
  for (int i = 0; i < count && *p; ++i) {
    const char* nl = p;
    while (*nl && *nl != '\n') ++nl;
    out.append(p, nl - p);
    out += '\n';
    p = *nl ? nl + 1 : nl;
  }
  return out;
}

ProofStep step(const char* term, const char* by, Direction dir,
               const char* at) {
  ProofStep s;
  s.result = parse_term(term);
  s.by = by;
  s.dir = dir;
  s.at = *parse_position(at);
  return s;
}

ProofScript script(const char* goal, std::vector<std::string> uses,
                   std::vector<ProofStep> steps) {
  ProofScript s;
  s.goal = parse_identity(goal);
  s.start = s.goal.lhs;
  s.uses = std::move(uses);
  s.steps = std::move(steps);
  return s;
}

constexpr Direction LR = Direction::L2R;
constexpr Direction RL = Direction::R2L;

// The lemma chain of the axiomatization proof, each justification split into
// single directed rewrites. A1..A3 are the three absorption forms derived
// from K14 and Q1; E1 is the constancy helper used for K6. Right-division
// halves are generated by mirroring (see section3()).
//
// K13 is proved left-to-right from x \ (x * ((y * z) / z)); the displayed
// chain runs the other way, so its steps appear here reversed.
// The K14 proof introduces the fresh variable u through the reversed Q5
// step; u is reconstructed from the stated result term.
std::vector<ProofScript> section3_core() {
  std::vector<ProofScript> out;

  out.push_back(script(
      R"(E1: (x \ y) \ ((x \ y) * z) = (x \ (x * z)) * (z \ z))",
      {"Q1", "Q3", "Q5"},
      {
          step(R"((x \ y) \ ((x \ y) * (z \ (z * z))))", "Q1", RL, "1.1"),
          step(R"((x \ y) \ ((x \ y) * (z * (z \ z))))", "Q3", RL, "1.1"),
          step(R"((x \ (x * z)) * (z \ z))", "Q5", LR, ""),
      }));

  out.push_back(script(
      R"(K6: (x \ y) \ ((x \ y) * z) = x \ (x * z))", {"E1", "Q1"},
      {
          step(R"((x \ (x * z)) * (z \ z))", "E1", LR, ""),
          step(R"((x \ (x * x)) \ ((x \ (x * x)) * z))", "E1", RL, ""),
          step(R"(x \ ((x \ (x * x)) * z))", "Q1", LR, "0"),
          step(R"(x \ (x * z))", "Q1", LR, "1.0"),
      }));

  out.push_back(script(
      R"(K14: (x \ (x * y)) * z = x \ (x * (y * z)))", {"Q5", "K6"},
      {
          step(R"((x \ u) \ ((x \ u) * (y * z)))", "Q5", RL, ""),
          step(R"(x \ (x * (y * z)))", "K6", LR, ""),
      }));

  out.push_back(script(
      R"(A1: x \ (x * (x * z)) = x * z)", {"K14", "Q1"},
      {
          step(R"((x \ (x * x)) * z)", "K14", RL, ""),
          step(R"(x * z)", "Q1", LR, "0"),
      }));

  out.push_back(script(
      R"(A2: x * (x \ (x * z)) = x * z)", {"Q3", "A1"},
      {
          step(R"(x \ (x * (x * z)))", "Q3", LR, ""),
          step(R"(x * z)", "A1", LR, ""),
      }));

  out.push_back(script(
      R"(A3: x * (x * (x \ z)) = x * z)", {"Q3", "A2"},
      {
          step(R"(x * (x \ (x * z)))", "Q3", LR, "1"),
          step(R"(x * z)", "A2", LR, ""),
      }));

  out.push_back(script(
      R"(K5: (x * y) \ ((x * y) * z) = x \ (x * z))", {"A1", "K6"},
      {
          step(R"((x \ (x * (x * y))) \ ((x * y) * z))", "A1", RL, "0"),
          step(R"((x \ (x * (x * y))) \ ((x \ (x * (x * y))) * z))", "A1", RL,
               "1.0"),
          step(R"(x \ (x * z))", "K6", LR, ""),
      }));

  out.push_back(script(
      R"(K8: x * (y \ (y * z)) = x * z)", {"Q3", "A3", "K5", "K14", "A2"},
      {
          step(R"(x * (y * (y \ z)))", "Q3", RL, "1"),
          step(R"(x * (x * (x \ (y * (y \ z)))))", "A3", RL, ""),
          step(R"(x * (x \ (x * (y * (y \ z)))))", "Q3", LR, "1"),
          step(R"(x * ((x * (x \ y)) \ ((x * (x \ y)) * (y * (y \ z)))))",
               "K5", RL, "1"),
          step(R"(x * ((x * (x \ y)) \ ((x \ (x * y)) * (y * (y \ z)))))",
               "Q3", LR, "1.1.0"),
          step(R"(x * ((x * (x \ y)) \ (x \ (x * (y * (y * (y \ z)))))))",
               "K14", LR, "1.1"),
          step(R"(x * ((x * (x \ y)) \ (x \ (x * (y * z)))))", "A3", LR,
               "1.1.1.1"),
          step(R"(x * ((x * (x \ y)) \ ((x \ (x * y)) * z)))", "K14", RL,
               "1.1"),
          step(R"(x * ((x * (x \ y)) \ ((x * (x \ y)) * z)))", "Q3", RL,
               "1.1.0"),
          step(R"(x * (x \ (x * z)))", "K5", LR, "1"),
          step(R"(x * z)", "A2", LR, ""),
      }));

  out.push_back(script(
      R"(K7: (x / y) \ ((x / y) * z) = x \ (x * z))", {"K5", "Q4", "K9"},
      {
          step(R"(((x / y) * y) \ (((x / y) * y) * z))", "K5", RL, ""),
          step(R"((((x / y) * y) * z) \ ((((x / y) * y) * z) * z))", "K5", RL,
               ""),
          step(R"((((x * y) / y) * z) \ ((((x / y) * y) * z) * z))", "Q4", LR,
               "0.0"),
          step(R"((((x * y) / y) * z) \ ((((x * y) / y) * z) * z))", "Q4", LR,
               "1.0.0"),
          step(R"((x * z) \ ((((x * y) / y) * z) * z))", "K9", LR, "0"),
          step(R"((x * z) \ ((x * z) * z))", "K9", LR, "1.0"),
          step(R"(x \ (x * z))", "K5", LR, ""),
      }));

  out.push_back(script(
      R"(K13: x \ (x * ((y * z) / z)) = ((x \ (x * y)) * z) / z)",
      {"Q3", "K15", "A1", "A3"},
      {
          step(R"(x \ (((x * y) * z) / z))", "K15", LR, "1"),
          step(R"(x \ (((x * (x * (x \ y))) * z) / z))", "A3", RL, "1.0.0"),
          step(R"(x \ (x * (((x * (x \ y)) * z) / z)))", "K15", RL, "1"),
          step(R"(x \ (x * (x * (((x \ y) * z) / z))))", "K15", RL, "1.1"),
          step(R"(x * (((x \ y) * z) / z))", "A1", LR, ""),
          step(R"(((x * (x \ y)) * z) / z)", "K15", LR, ""),
          step(R"(((x \ (x * y)) * z) / z)", "Q3", LR, "0.0"),
      }));

  return out;
}

// Interleaves each left-division script with its mirror so that every script
// only uses axioms and earlier goals.
std::vector<ProofScript> section3() {
  NamePairing pairing = standard_pairing();
  std::vector<ProofScript> core = section3_core();
  std::vector<ProofScript> out;
  auto take = [&](const std::string& name, bool with_mirror) {
    for (auto& s : core)
      if (s.goal.name == name) {
        out.push_back(s);
        if (with_mirror) out.push_back(mirror_script(s, pairing));
        return;
      }
  };
  take("E1", true);
  take("K6", true);
  take("K14", true);
  take("A1", true);
  take("A2", true);
  take("A3", true);
  take("K5", true);
  take("K8", true);
  take("K7", true);
  take("K13", false);
  return out;
}

Fixtures build() {
  Fixtures f;
  f.models["TABLE1"] = table1();
  f.models["TABLE2"] = table2();
  f.models["TABLE3"] = table3();
  f.models["TABLE4"] = table4();
  f.models["CYCLIC3"] = cyclic_group_model(3);
  f.models["LZ2"] = left_zero_model(2);
  f.models["RZ2"] = right_zero_model(2);

  f.theories["QUASIGROUP"] = parse_theory(kQuasigroup);
  f.theories["LOOP_EXTRA"] = parse_theory(kLoopExtra);
  f.theories["RECT_AXIOMS"] = parse_theory(kRectAxioms);
  f.theories["RECT_LOOP"] =
      parse_theory(std::string(kRectAxioms) + kLAxiom);
  f.theories["KRAPEZ"] =
      parse_theory(first_n(kRectAxioms, 4) + kKrapezTail);
  f.theories["KRAPEZ8"] =
      parse_theory(first_n(kRectAxioms, 4) + kKrapez8Tail);
  f.theories["LEFT_ZERO"] = parse_theory(kLeftZero);
  f.theories["RIGHT_ZERO"] = parse_theory(kRightZero);

  f.proofs["SECTION3"] = {"RECT_AXIOMS", section3()};
  return f;
}

}  // namespace

const Fixtures& fixtures() {
  static const Fixtures f = build();
  return f;
}

Model left_zero_model(int n) {
  Model m = Model::filled(n);
  for (auto op : {Op::Mul, Op::Ldiv, Op::Rdiv})
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(op, i, j) = i;
  return m;
}

Model right_zero_model(int n) {
  Model m = Model::filled(n);
  for (auto op : {Op::Mul, Op::Ldiv, Op::Rdiv})
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(op, i, j) = j;
  return m;
}

Model cyclic_group_model(int n) {
  Model m = Model::filled(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m.at(Op::Mul, i, j) = (i + j) % n;
      m.at(Op::Ldiv, i, j) = (j - i + n) % n;
      m.at(Op::Rdiv, i, j) = (i - j + n) % n;
    }
  return m;
}

}  // namespace magmalab
