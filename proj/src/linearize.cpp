#include "symcap/linfty.hpp"

#include <fmt/format.h>

namespace symcap {

CdgaShift::CdgaShift(ModelPtr m, std::map<GenId, Coeff> eps) : LInfinityMorphism(m, m), eps_(std::move(eps)) {
  if (!m->is_cdga()) throw std::invalid_argument("linearization needs a CDGA-mode model");
  std::erase_if(eps_, [](const auto& kv) { return kv.second.is_zero(); });
  for (auto& [g, c] : eps_) {
    int d = m->generators().degree(g);
    bool ok = m->flags().grading == GradingMode::integer ? d == 0 : parity(d) == 0;
    if (!ok)
      throw std::invalid_argument("augmentation is nonzero on " + m->generators()[g].name +
                                  ", which is not of degree zero");
  }
}

Element CdgaShift::apply(const Word& w) const {
  const LInfinityModel& m = *source();
  Element out;
  std::vector<std::size_t> shiftable;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (eps_.count(w[i])) shiftable.push_back(i);
  if (shiftable.size() > 20) throw std::invalid_argument("word too long to expand");
  // replaced letters are even scalars, so no signs appear
  for (unsigned long mask = 0; mask < (1ul << shiftable.size()); ++mask) {
    std::vector<bool> drop(w.size(), false);
    Coeff c = m.scalar(1);
    for (std::size_t b = 0; b < shiftable.size(); ++b)
      if ((mask >> b) & 1) {
        drop[shiftable[b]] = true;
        c *= eps_.at(w[shiftable[b]]);
      }
    Word rest;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (!drop[i]) rest.letters.push_back(w[i]);
    add_term(out, rest, c);
  }
  return out;
}

Element CdgaShift::component(const BarWord& w) const {
  if (w.size() != 1) return {};
  return apply(w[0]);
}

Coeff evaluate_augmentation(const LInfinityModel& m, const std::map<GenId, Coeff>& eps, const Element& x) {
  Coeff total = m.scalar(0);
  for (auto& [w, c] : x) {
    Coeff term = c;
    for (GenId g : w.letters) {
      auto it = eps.find(g);
      if (it == eps.end()) {
        term = m.scalar(0);
        break;
      }
      term *= it->second;
    }
    total += term;
  }
  return total;
}

Linearization linearize(ModelPtr cdga, const std::map<std::string, Coeff>& eps_named) {
  if (!cdga->is_cdga()) throw std::invalid_argument("linearize needs a CDGA-mode model");
  std::map<GenId, Coeff> eps, neg;
  for (auto& [n, c] : eps_named) {
    GenId g = cdga->generators().id(n);
    eps[g] = c.truncated(cdga->cutoff());
    neg[g] = -eps[g];
  }
  Linearization out;
  out.shift = std::make_shared<CdgaShift>(cdga, eps);
  out.inverse = std::make_shared<CdgaShift>(cdga, neg);

  for (auto& [key, val] : cdga->operations()) {
    Coeff e = evaluate_augmentation(*cdga, out.shift->values(), val);
    if (!e.is_zero())
      throw IntegrityError(fmt::format("augmentation fails the chain-map check on {}: {}", cdga->letter_str(key), e.str()));
  }

  ModelFlags fl = cdga->flags();
  fl.algebra = AlgebraMode::module;
  out.linear = std::make_shared<LInfinityModel>(cdga->generators().all(), fl);
  for (auto& [key, val] : cdga->operations()) {
    // l^{eps;k}(x_1..x_k) = F(l^k(F^{-1}x_1, ...)) and l^k kills the unit,
    // so on generators it is F applied to l^k(x_1..x_k)
    Element conj;
    for (auto& [w, c] : val) add_into(conj, out.shift->apply(w), c);
    Element lin;
    for (auto& [w, c] : conj) {
      if (w.empty())
        throw IntegrityError("constant term survives linearization on " + cdga->letter_str(key));
      if (w.size() == 1) add_term(lin, w, c);
    }
    if (!lin.empty()) out.linear->add_operation(key, lin);
  }
  out.linear->validate();
  return out;
}

Linearization linearize(ModelPtr cdga, const std::string& augmentation_name) {
  const auto& aug = cdga->augmentation(augmentation_name);
  std::map<std::string, Coeff> eps;
  for (auto& [in, out] : aug.components) {
    if (in.size() != 1)
      throw std::invalid_argument("linearization uses augmentations given on single generators");
    Coeff total = cdga->scalar(0);
    for (auto& [_, c] : out) total += c;
    eps[cdga->generators()[in[0]].name] = total;
  }
  return linearize(std::move(cdga), eps);
}

} // namespace symcap
