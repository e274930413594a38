#include "canonsys/csv.hpp"

#include <charconv>
#include <sstream>

#include "canonsys/errors.hpp"

namespace canonsys {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string piecewise_csv(const PiecewiseHamiltonian& H) {
  std::string out = "t_lo,t_hi,h11,h12,h22\n";
  for (const auto& b : H.blocks()) {
    out += format_double(b.t_lo) + ',' + format_double(b.t_hi) + ',' + format_double(b.h11) + ',' +
           format_double(b.h12) + ',' + format_double(b.h22) + '\n';
  }
  return out;
}

std::string sampled_csv(const std::vector<SampledRow>& rows) {
  std::string out = "t,h11,h12,h22\n";
  for (const auto& r : rows) {
    out += format_double(r.t) + ',' + format_double(r.h11) + ',' + format_double(r.h12) + ',' + format_double(r.h22) +
           '\n';
  }
  return out;
}

PiecewiseHamiltonian parse_piecewise_csv(std::string_view text) {
  std::vector<HamiltonianBlock> blocks;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "t_lo,t_hi,h11,h12,h22")
        fail(ErrorKind::InvalidArgument, "Hamiltonian CSV must start with the header t_lo,t_hi,h11,h12,h22");
      header_seen = true;
      continue;
    }
    double v[5];
    std::size_t field = 0;
    std::size_t start = 0;
    while (field < 5) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string_view::npos) comma = line.size();
      const std::string_view cell = line.substr(start, comma - start);
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v[field]);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        std::ostringstream os;
        os << "Hamiltonian CSV line " << line_no << ", field " << field + 1 << ": not a number";
        fail(ErrorKind::InvalidArgument, os.str());
      }
      ++field;
      start = comma + 1;
      if (comma == line.size()) break;
    }
    if (field != 5 || start <= line.size()) {
      std::ostringstream os;
      os << "Hamiltonian CSV line " << line_no << ": expected 5 fields";
      fail(ErrorKind::InvalidArgument, os.str());
    }
    blocks.push_back({v[0], v[1], v[2], v[3], v[4]});
  }
  if (!header_seen) fail(ErrorKind::InvalidArgument, "Hamiltonian CSV is empty");
  return PiecewiseHamiltonian(std::move(blocks), false);
}

}  // namespace canonsys
