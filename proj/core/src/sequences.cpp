#include "vext/sequences.hpp"

#include <climits>

namespace vext {

SequenceSpec SequenceSpec::closed_form(std::vector<std::vector<std::string>> coords) {
  if (coords.empty()) fail(ErrorCode::InvalidArgument, "closed_form: no sequences");
  SequenceSpec s;
  s.texts_ = coords;
  for (const auto& seq : coords) {
    if (seq.empty() || seq.size() != coords.front().size())
      fail(ErrorCode::DimensionMismatch, "closed_form: mixed coordinate counts");
    std::vector<Expr> es;
    for (const auto& t : seq) es.push_back(Expr::parse(t));
    s.closed_.push_back(std::move(es));
  }
  return s;
}

SequenceSpec SequenceSpec::single_closed_form(std::vector<std::string> coords) {
  SequenceSpec s = closed_form({std::move(coords)});
  s.single_ = true;
  return s;
}

SequenceSpec SequenceSpec::tabulated(std::vector<std::vector<Point>> tables) {
  if (tables.empty()) fail(ErrorCode::InvalidArgument, "tabulated: no sequences");
  SequenceSpec s;
  for (const auto& t : tables) {
    if (t.empty() || t.size() != tables.front().size())
      fail(ErrorCode::DimensionMismatch, "tabulated: mixed lengths");
    for (const Point& p : t)
      if (p.dim() != tables.front().front().dim())
        fail(ErrorCode::DimensionMismatch, "tabulated: mixed dims");
  }
  s.tables_ = std::move(tables);
  return s;
}

SequenceSpec SequenceSpec::single_tabulated(std::vector<Point> table) {
  SequenceSpec s = tabulated({std::move(table)});
  s.single_ = true;
  return s;
}

int SequenceSpec::dim() const {
  if (!closed_.empty()) return static_cast<int>(closed_.front().size());
  return tables_.front().front().dim();
}

long SequenceSpec::max_k() const {
  if (!closed_.empty()) return LONG_MAX;
  return static_cast<long>(tables_.front().size());
}

Point SequenceSpec::eval(int i, long k) const {
  if (k < 1) fail(ErrorCode::InvalidArgument, "sequence index k must be >= 1");
  if (i < 0 || i >= n_sets()) fail(ErrorCode::InvalidArgument, "sequence index out of range");
  if (!closed_.empty()) {
    std::vector<double> c;
    c.reserve(closed_[static_cast<std::size_t>(i)].size());
    for (const Expr& e : closed_[static_cast<std::size_t>(i)]) c.push_back(e.eval_k(static_cast<double>(k)));
    return Point(std::move(c));
  }
  const auto& t = tables_[static_cast<std::size_t>(i)];
  if (k > static_cast<long>(t.size()))
    fail(ErrorCode::InvalidArgument, "tabulated sequence exhausted at k=" + std::to_string(k));
  return t[static_cast<std::size_t>(k - 1)];
}

Point SequenceSpec::eval_single(long k) const {
  if (!single_) fail(ErrorCode::InvalidArgument, "eval_single on a multi-sequence spec");
  return eval(0, k);
}

std::vector<Point> SequenceSpec::eval_all(long k) const {
  std::vector<Point> out;
  for (int i = 0; i < n_sets(); ++i) out.push_back(eval(i, k));
  return out;
}

}  // namespace vext
