#include "nomrec/props.hpp"

#include <stdexcept>

namespace nomrec {

std::string sym_name(Sym s) {
  switch (s) {
    case Sym::vr: return "vr";
    case Sym::ap: return "ap";
    case Sym::lm: return "lm";
    case Sym::pm: return "pm";
    case Sym::sw: return "sw";
    case Sym::sb: return "sb";
    case Sym::ren: return "ren";
    case Sym::fv: return "fv";
    case Sym::fr: return "fr";
  }
  throw std::logic_error("sym_name: bad symbol");
}

Signature sigma_of(int i) {
  const Signature ctor = {Sym::vr, Sym::ap, Sym::lm};
  Signature s = ctor;
  switch (i) {
    case 1:
    case 2:
      s.insert(Sym::pm);
      s.insert(Sym::fv);
      return s;
    case 3:
    case 4:
      s.insert(Sym::sw);
      s.insert(Sym::fv);
      return s;
    case 5:
    case 6:
      s.insert(Sym::sw);
      s.insert(Sym::fr);
      return s;
    case 7:
      s.insert(Sym::sb);
      s.insert(Sym::fr);
      return s;
    case 8:
      s.insert(Sym::ren);
      return s;
    case 9:
      s.insert(Sym::ren);
      s.insert(Sym::fr);
      return s;
    default:
      throw std::out_of_range("sigma_of: recursor id must be 1..9");
  }
}

std::vector<std::string> props_of(int i) {
  switch (i) {
    case 1:
      return {"PmVr", "PmAp", "PmLm", "PmId", "PmCp", "FvDPm", "FCB"};
    case 2:
      return {"PmVr", "PmAp", "PmLm", "PmId", "PmCp",
              "PmFv", "FvVr", "FvAp", "FvLm"};
    case 3:
      return {"SwVr", "SwAp", "SwLm", "SwId", "SwIv", "SwCp", "FvDSw", "FCB"};
    case 4:
      return {"SwVr", "SwAp", "SwLm", "SwFv", "FvVr", "FvAp", "FvLm"};
    case 5:
      return {"SwVr", "SwAp", "SwLm", "SwBvr", "FrVr", "FrAp", "FrLm"};
    case 6:
      return {"SwVr", "SwAp", "SwLm", "SwCg", "FrVr", "FrAp", "FrLm"};
    case 7:
      return {"SbVr", "SbAp", "SbLm", "SbBvr", "FrVr", "FrAp", "FrLm"};
    case 8:
      return {"RnVr", "RnAp", "RnLm1", "RnLm2", "RnBvr2",
              "RnId", "RnIm",  "RnCh",  "RnCm"};
    case 9:
      return {"RnVr", "RnAp", "RnLm1", "RnBvr", "FrVr", "FrAp", "FrLm"};
    default:
      throw std::out_of_range("props_of: recursor id must be 1..9");
  }
}

Signature prop_requires(const std::string& p) {
  Signature s = {Sym::vr, Sym::ap, Sym::lm};
  auto has = [&](const char* prefix) {
    return p.rfind(prefix, 0) == 0;
  };
  if (p == "FvSw" || p == "FvDSw" || p == "SwFv") {
    s.insert(Sym::sw);
    s.insert(Sym::fv);
    return s;
  }
  if (p == "FvPm" || p == "FvDPm") {
    s.insert(Sym::pm);
    s.insert(Sym::fv);
    return s;
  }
  if (p == "FrDSw") {
    s.insert(Sym::sw);
    s.insert(Sym::fr);
    return s;
  }
  if (p == "FrDRn") {
    s.insert(Sym::ren);
    s.insert(Sym::fr);
    return s;
  }
  if (p == "FrSw") {
    s.insert(Sym::sw);
    s.insert(Sym::fr);
    return s;
  }
  if (p == "FrSb") {
    s.insert(Sym::sb);
    s.insert(Sym::fr);
    return s;
  }
  if (p == "FrRn" || p == "FrRn2") {
    s.insert(Sym::ren);
    s.insert(Sym::fr);
    return s;
  }
  if (has("Sw")) {
    s.insert(Sym::sw);
    if (p == "SwBvr" || p == "SwCg" || p == "SwFr") s.insert(Sym::fr);
    return s;
  }
  if (has("Pm")) {
    s.insert(Sym::pm);
    if (p == "PmFv") s.insert(Sym::fv);
    if (p == "PmBvr") s.insert(Sym::fv);
    return s;
  }
  if (has("Sb")) {
    s.insert(Sym::sb);
    if (p == "SbLm" || p == "SbBvr" || p == "SbFr" || p == "SbChFr" ||
        p == "SbCm")
      s.insert(Sym::fr);
    return s;
  }
  if (has("Rn")) {
    s.insert(Sym::ren);
    if (p == "RnBvr" || p == "RnFr" || p == "RnChFr") s.insert(Sym::fr);
    return s;
  }
  if (p == "FrVr" || p == "FrAp" || p == "FrLm") {
    s.insert(Sym::fr);
    return s;
  }
  if (p == "FvVr" || p == "FvAp" || p == "FvLm" || p == "FSupFv") {
    s.insert(Sym::fv);
    return s;
  }
  if (p == "FCB") {
    s.insert(Sym::fv);
    return s;
  }
  if (p == "FSupFr") {
    s.insert(Sym::fr);
    return s;
  }
  throw std::invalid_argument("prop_requires: unknown law id " + p);
}

std::string PropLine::to_string() const {
  std::string out = "PROP " + name + (pass ? " PASS" : " FAIL");
  out += " n=" + std::to_string(n);
  out += " hits=" + std::to_string(hits);
  if (heuristic) out += " heuristic";
  if (!cex.empty()) out += " cex=" + cex;
  return out;
}

bool PropReport::all_pass() const {
  for (const auto& l : lines)
    if (!l.pass) return false;
  return true;
}

std::string PropReport::to_string() const {
  std::string out;
  for (const auto& l : lines) {
    out += l.to_string();
    out += '\n';
  }
  return out;
}

const PropLine* PropReport::find(const std::string& name) const {
  for (const auto& l : lines)
    if (l.name == name) return &l;
  return nullptr;
}

}  // namespace nomrec
