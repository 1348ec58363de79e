#include "sammy/stdlib.hpp"

#include <cstdlib>
#include <fstream>

namespace sammy {

const std::vector<std::string>& stdlib_names() {
  static const std::vector<std::string> names = {
      "span_category", "comma",          "iso_two_attempt", "omega",
      "skeleton_via_coeq", "concat_numbers", "binary_reader",   "product_pair",
      "double_self",   "target_of",      "compose_tri",     "kan_pair",
  };
  return names;
}

namespace {

std::string macro_dir() {
  if (const char* env = std::getenv("SAMMY_MACRO_DIR")) return env;
#ifdef SAMMY_MACRO_DIR
  return SAMMY_MACRO_DIR;
#else
  return "macros";
#endif
}

}  // namespace

std::string stdlib_source(const std::string& name) {
  std::string path = macro_dir() + "/" + name + ".sam";
  std::ifstream in(path);
  if (!in) fail(ErrKind::Io, "cannot open macro " + path);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

SammyProgram stdlib_program(const std::string& name) {
  return parse_program(stdlib_source(name));
}

namespace {

// the doubling block: XC <- XC glued to itself end-to-start
const char* kDoubleBlock =
    "C2, L, R = Coprod(XC, XC)\n"
    "F1 = Hcomp(L, XE)\n"
    "G1 = Hcomp(R, XB)\n"
    "XC, Q = Coeq(F1, G1)\n"
    "QL = Hcomp(Q, L)\n"
    "QR = Hcomp(Q, R)\n"
    "XB = Hcomp(QL, XB)\n"
    "XE = Hcomp(QR, XE)\n";

// the add-one block: XC <- XC glued to a fresh arrow
const char* kPlusOneBlock =
    "C3, L2, R2 = Coprod(XC, T2)\n"
    "F2 = Hcomp(L2, XE)\n"
    "G2 = Hcomp(R2, SB)\n"
    "XC, Q2 = Coeq(F2, G2)\n"
    "Q2L = Hcomp(Q2, L2)\n"
    "Q2R = Hcomp(Q2, R2)\n"
    "XB = Hcomp(Q2L, XB)\n"
    "XE = Hcomp(Q2R, TB)\n";

const char* kTriplePrologue =
    "T2 = Two()\n"
    "SB = S()\n"
    "TB = T()\n"
    "XC = One()\n"
    "XB = Ident(XC)\n"
    "XE = Ident(XC)\n";

}  // namespace

std::string binary_encode_source(long n) {
  if (n < 1) fail(ErrKind::Type, "chains have at least one object");
  std::string out = kTriplePrologue;
  long e = n - 1;
  if (e > 0) {
    int top = 63;
    while (!((e >> top) & 1)) top--;
    for (int b = top; b >= 0; --b) {
      out += kDoubleBlock;
      if ((e >> b) & 1) out += kPlusOneBlock;
    }
  }
  out += "Return XC\n";
  return out;
}

std::string number_triple_source(long n) {
  if (n < 1) fail(ErrKind::Type, "chains have at least one object");
  std::string out = kTriplePrologue;
  for (long i = 1; i < n; ++i) out += kPlusOneBlock;
  out += "Return XC\n";
  return out;
}

FunctorData chain_successor(int n) {
  FinCat ch = make_chain(n);
  FunctorData f;
  f.dom = ch;
  f.cod = ch;
  for (ObjId x = 0; x < n; ++x) f.obj_map.push_back(std::min(x + 1, n - 1));
  for (MorId m = 0; m < ch.n_morphisms(); ++m) {
    ObjId s = f.obj_map[ch.src[m]], t = f.obj_map[ch.tgt[m]];
    MorId img = kNoMor;
    for (MorId k = 0; k < ch.n_morphisms(); ++k)
      if (ch.src[k] == s && ch.tgt[k] == t) img = k;
    f.mor_map.push_back(img);
  }
  require_valid(f, "chain_successor");
  return f;
}

FunctorData chain_bits(long n) {
  if (n < 1) fail(ErrKind::Type, "chains have at least one object");
  long e = n - 1;
  std::vector<int> bits;
  if (e == 0) {
    bits.push_back(0);
  } else {
    int top = 63;
    while (!((e >> top) & 1)) top--;
    for (int b = top; b >= 0; --b) bits.push_back((e >> b) & 1);
  }
  FinCat ch = make_chain(static_cast<int>(bits.size()));
  FinCat i2 = make_iso_two();
  FunctorData f;
  f.dom = ch;
  f.cod = i2;
  for (int b : bits) f.obj_map.push_back(b);
  for (MorId m = 0; m < ch.n_morphisms(); ++m) {
    ObjId s = f.obj_map[ch.src[m]], t = f.obj_map[ch.tgt[m]];
    MorId img = kNoMor;
    for (MorId k = 0; k < i2.n_morphisms(); ++k)
      if (i2.src[k] == s && i2.tgt[k] == t) img = k;
    f.mor_map.push_back(img);
  }
  require_valid(f, "chain_bits");
  return f;
}

}  // namespace sammy
