#include "sqd/fcidump.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sqd/errors.hpp"

namespace sqd {

FragmentHamiltonian::FragmentHamiltonian(SystemSpec spec)
    : spec_(spec), m_(spec.orbitals) {
  validate(spec_);
  h_.assign(static_cast<std::size_t>(m_) * static_cast<std::size_t>(m_), 0.0);
  const std::size_t npair = pair_index(m_ - 1, m_ - 1) + 1;
  eri_.assign(npair * (npair + 1) / 2, 0.0);
}

void FragmentHamiltonian::set_h1(int p, int q, double v) {
  h_[static_cast<std::size_t>(p) * static_cast<std::size_t>(m_) +
     static_cast<std::size_t>(q)] = v;
  h_[static_cast<std::size_t>(q) * static_cast<std::size_t>(m_) +
     static_cast<std::size_t>(p)] = v;
}

void FragmentHamiltonian::set_eri(int p, int q, int r, int s, double v) {
  eri_[eri_index(p, q, r, s)] = v;
}

std::size_t FragmentHamiltonian::nonzero_h1_count() const {
  std::size_t n = 0;
  for (int p = 0; p < m_; ++p)
    for (int q = 0; q <= p; ++q)
      if (h1(p, q) != 0.0) ++n;
  return n;
}

std::size_t FragmentHamiltonian::nonzero_eri_count() const {
  std::size_t n = 0;
  for (double v : eri_)
    if (v != 0.0) ++n;
  return n;
}

namespace {

// Pulls "KEY = integer" out of a namelist header, case-insensitive.
bool find_header_int(const std::string& header, const std::string& key,
                     long& value) {
  for (std::size_t pos = 0; (pos = header.find(key, pos)) != std::string::npos;
       ++pos) {
    // Reject partial matches such as the NELEC inside KNELEC.
    if (pos > 0 && (std::isalnum(static_cast<unsigned char>(header[pos - 1])) ||
                    header[pos - 1] == '_'))
      continue;
    std::size_t i = pos + key.size();
    while (i < header.size() &&
           (header[i] == ' ' || header[i] == '\t' || header[i] == '='))
      ++i;
    if (i >= header.size()) continue;
    char* end = nullptr;
    const long v = std::strtol(header.c_str() + i, &end, 10);
    if (end == header.c_str() + i) continue;
    value = v;
    return true;
  }
  return false;
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

FragmentHamiltonian parse_fcidump(std::istream& in,
                                  std::vector<std::string>* warnings) {
  std::string line;
  std::string header;
  int line_no = 0;
  bool header_done = false;
  while (std::getline(in, line)) {
    ++line_no;
    header += ' ';
    header += upper(line);
    const std::string u = upper(line);
    if (u.find("&END") != std::string::npos ||
        u.find('/') != std::string::npos) {
      header_done = true;
      break;
    }
  }
  if (!header_done) throw ParseError("FCIDUMP header is not terminated by &END or /");

  long norb = 0, nelec = 0, ms2 = 0;
  if (!find_header_int(header, "NORB", norb))
    throw ParseError("FCIDUMP header is missing NORB");
  if (!find_header_int(header, "NELEC", nelec))
    throw ParseError("FCIDUMP header is missing NELEC");
  find_header_int(header, "MS2", ms2);  // optional, defaults to 0

  if (norb < 1 || norb > 64)
    throw SpecError("NORB=" + std::to_string(norb) + " is outside [1, 64]");
  if ((nelec + ms2) % 2 != 0 || nelec + ms2 < 0 || nelec - ms2 < 0)
    throw SpecError("NELEC=" + std::to_string(nelec) + ", MS2=" +
                    std::to_string(ms2) +
                    " do not split into integer spin populations");
  SystemSpec spec;
  spec.orbitals = static_cast<int>(norb);
  spec.n_alpha = static_cast<int>((nelec + ms2) / 2);
  spec.n_beta = static_cast<int>((nelec - ms2) / 2);
  validate(spec);

  FragmentHamiltonian h(spec);
  auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };

  // Duplicate tracking over canonical slots.
  std::vector<bool> seen_h(static_cast<std::size_t>(
                               FragmentHamiltonian::pair_index(norb - 1, norb - 1)) +
                               1,
                           false);
  std::vector<bool> seen_eri(h.eri_storage().size(), false);
  bool seen_core = false;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    double value;
    long i, j, k, l;
    if (!(ls >> value)) {
      std::string probe;
      if (!(std::istringstream(line) >> probe)) continue;  // blank line
      throw ParseError("FCIDUMP parse error at line " + std::to_string(line_no) +
                       ": expected \"value i j k l\"");
    }
    if (!(ls >> i >> j >> k >> l))
      throw ParseError("FCIDUMP parse error at line " + std::to_string(line_no) +
                       ": expected four indices after the value");
    std::string extra;
    if (ls >> extra)
      throw ParseError("FCIDUMP parse error at line " + std::to_string(line_no) +
                       ": trailing token \"" + extra + "\"");
    for (long idx : {i, j, k, l})
      if (idx < 0 || idx > norb)
        throw ParseError("FCIDUMP parse error at line " + std::to_string(line_no) +
                         ": index " + std::to_string(idx) +
                         " outside [0, " + std::to_string(norb) + "]");

    if (i == 0 && j == 0 && k == 0 && l == 0) {
      if (seen_core)
        warn("line " + std::to_string(line_no) + ": core energy overwritten");
      seen_core = true;
      h.set_e_core(value);
    } else if (i > 0 && j > 0 && k > 0 && l > 0) {
      const std::size_t slot = h.eri_index(static_cast<int>(i) - 1,
                                           static_cast<int>(j) - 1,
                                           static_cast<int>(k) - 1,
                                           static_cast<int>(l) - 1);
      if (seen_eri[slot])
        warn("line " + std::to_string(line_no) + ": duplicate integral (" +
             std::to_string(i) + " " + std::to_string(j) + " " +
             std::to_string(k) + " " + std::to_string(l) + ") overwritten");
      seen_eri[slot] = true;
      h.set_eri(static_cast<int>(i) - 1, static_cast<int>(j) - 1,
                static_cast<int>(k) - 1, static_cast<int>(l) - 1, value);
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      const std::size_t slot = FragmentHamiltonian::pair_index(
          static_cast<int>(i) - 1, static_cast<int>(j) - 1);
      if (seen_h[slot])
        warn("line " + std::to_string(line_no) + ": duplicate h(" +
             std::to_string(i) + "," + std::to_string(j) + ") overwritten");
      seen_h[slot] = true;
      h.set_h1(static_cast<int>(i) - 1, static_cast<int>(j) - 1, value);
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      // Orbital-energy records emitted by some programs; harmless here.
      warn("line " + std::to_string(line_no) +
           ": orbital-energy record ignored");
    } else {
      throw ParseError("FCIDUMP parse error at line " + std::to_string(line_no) +
                       ": unsupported index pattern " + std::to_string(i) + " " +
                       std::to_string(j) + " " + std::to_string(k) + " " +
                       std::to_string(l));
    }
  }
  return h;
}

FragmentHamiltonian parse_fcidump_file(const std::string& path,
                                       std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open FCIDUMP file: " + path);
  return parse_fcidump(in, warnings);
}

void write_fcidump(std::ostream& out, const FragmentHamiltonian& h) {
  const int m = h.orbitals();
  const SystemSpec& spec = h.spec();
  out << "&FCI NORB=" << m << ",NELEC=" << spec.n_alpha + spec.n_beta
      << ",MS2=" << spec.n_alpha - spec.n_beta << ",\n ORBSYM=";
  for (int p = 0; p < m; ++p) out << "1,";
  out << "\n ISYM=1,\n&END\n";

  char buf[64];
  auto emit = [&](double v, int i, int j, int k, int l) {
    std::snprintf(buf, sizeof buf, "%.16e %d %d %d %d\n", v, i, j, k, l);
    out << buf;
  };
  // Canonical quadruples: p >= q, r >= s, (pq) >= (rs).
  for (int p = 0; p < m; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r)
        for (int s = 0; s <= r; ++s) {
          if (FragmentHamiltonian::pair_index(p, q) <
              FragmentHamiltonian::pair_index(r, s))
            continue;
          const double v = h.eri(p, q, r, s);
          if (v != 0.0) emit(v, p + 1, q + 1, r + 1, s + 1);
        }
  for (int p = 0; p < m; ++p)
    for (int q = 0; q <= p; ++q)
      if (h.h1(p, q) != 0.0) emit(h.h1(p, q), p + 1, q + 1, 0, 0);
  emit(h.e_core(), 0, 0, 0, 0);
}

}  // namespace sqd
