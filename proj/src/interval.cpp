#include "symcap/linfty.hpp"

#include <set>

namespace symcap {

namespace {

class FunctionMorphism : public LInfinityMorphism {
public:
  FunctionMorphism(ModelPtr s, ModelPtr t, std::function<Element(const BarWord&)> f, std::optional<std::size_t> arity)
      : LInfinityMorphism(std::move(s), std::move(t)), f_(std::move(f)), arity_(arity) {}
  Element component(const BarWord& w) const override { return f_(w); }
  std::optional<std::size_t> max_arity() const override { return arity_; }

private:
  std::function<Element(const BarWord&)> f_;
  std::optional<std::size_t> arity_;
};

} // namespace

std::string IntervalModel::name(const std::string& base, std::size_t j, bool dt) const {
  std::string form;
  if (j == 0)
    form = dt ? "dt" : "1";
  else
    form = (j == 1 ? std::string("t") : "t^" + std::to_string(j)) + (dt ? "*dt" : "");
  return base + "|" + form;
}

IntervalModel interval_tensor(ModelPtr m, std::size_t max_t_degree) {
  if (m->is_cdga()) throw std::invalid_argument("interval_tensor expects a module-mode model");
  IntervalModel im;
  im.max_t_degree = max_t_degree;
  const auto& gens = m->generators();
  std::vector<Generator> ng;
  for (auto& g : gens.all())
    for (std::size_t j = 0; j <= max_t_degree; ++j) {
      ng.push_back({im.name(g.name, j, false), g.degree, g.action});
      if (j < max_t_degree) ng.push_back({im.name(g.name, j, true), g.degree + 1, g.action});
    }
  ModelFlags fl = m->flags();
  im.model = std::make_shared<LInfinityModel>(ng, fl);
  auto& out = *im.model;
  auto new_id = [&](GenId g, std::size_t j, bool dt) { return out.generators().id(im.name(gens[g].name, j, dt)); };

  // l^k(v_1 c_1, ..., v_k c_k) = (-1)^{sum_{j<i} |v_i||c_j|} l^k(v_1..v_k) c_1...c_k
  for (auto& [key, val] : m->operations()) {
    const std::size_t k = key.size();
    std::set<Word> seen;
    std::vector<std::size_t> a(k, 0);
    std::vector<int> dt(k, 0);
    while (true) {
      std::size_t tdeg = 0;
      int ndt = 0;
      for (std::size_t i = 0; i < k; ++i) {
        tdeg += a[i];
        ndt += dt[i];
      }
      bool exists = true;
      for (std::size_t i = 0; i < k; ++i)
        if (dt[i] && a[i] >= max_t_degree) exists = false;
      if (exists && tdeg + ndt <= max_t_degree && ndt <= 1) {
        int sign = 1;
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < i; ++j)
            if (parity(gens.degree(key[i])) && dt[j]) sign = -sign;
        std::vector<GenId> in;
        for (std::size_t i = 0; i < k; ++i) in.push_back(new_id(key[i], a[i], dt[i]));
        auto nk = normalize(in, [&](GenId g) { return out.generators().degree(g); });
        if (nk.sign != 0 && seen.insert(nk.word).second) {
          Element e;
          for (auto& [w, c] : val)
            add_term(e, Word{{new_id(w[0], tdeg, ndt == 1)}}, c * Rational(sign * nk.sign));
          out.add_operation(nk.word, e);
        }
      }
      std::size_t i = 0;
      for (; i < k; ++i) {
        if (++dt[i] <= 1) break;
        dt[i] = 0;
        if (++a[i] <= max_t_degree) break;
        a[i] = 0;
      }
      if (i == k) break;
    }
  }
  // the d/dt part of l^1: v t^j -> (-1)^{|v|} j v t^{j-1} dt
  for (GenId g = 0; g < gens.size(); ++g)
    for (std::size_t j = 1; j <= max_t_degree; ++j) {
      Element e;
      int s = parity(gens.degree(g)) ? -1 : 1;
      add_term(e, Word{{new_id(g, j - 1, true)}}, out.scalar(Rational(s * static_cast<long>(j))));
      out.add_operation(Word{{new_id(g, j, false)}}, e);
    }
  return im;
}

MorphismPtr eval_at(const IntervalModel& im, ModelPtr base, const Rational& t0) {
  auto f = std::make_shared<SparseMorphism>(im.model, base);
  for (auto& g : base->generators().all()) {
    Rational p = 1;
    for (std::size_t j = 0; j <= im.max_t_degree; ++j) {
      if (p != 0) f->add_component({im.name(g.name, j, false)}, {{g.name, base->scalar(p)}});
      p *= t0;
    }
  }
  return f;
}

MorphismPtr constants_inclusion(ModelPtr base, const IntervalModel& im) {
  auto f = std::make_shared<SparseMorphism>(base, im.model);
  for (auto& g : base->generators().all()) f->add_component({g.name}, {{im.name(g.name, 0, false), base->scalar(1)}});
  return f;
}

MorphismPtr constant_homotopy(MorphismPtr phi, const IntervalModel& target_interval) {
  ModelPtr tgt = phi->target();
  ModelPtr lifted = target_interval.model;
  IntervalModel im = target_interval;
  auto f = [phi, tgt, lifted, im](const BarWord& w) {
    Element out;
    for (auto& [l, c] : phi->component(w))
      add_term(out, lifted->letter(im.name(tgt->generators()[l[0]].name, 0, false)), c);
    return out;
  };
  return std::make_shared<FunctionMorphism>(phi->source(), lifted, f, phi->max_arity());
}

} // namespace symcap
