#include "symcap/model_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace symcap {

using nlohmann::ordered_json;

namespace {

std::vector<std::string> names_of(const ordered_json& arr) {
  std::vector<std::string> out;
  for (auto& n : arr) out.push_back(n.get<std::string>());
  return out;
}

Coeff coeff_of(const ordered_json& j, const std::optional<Rational>& cutoff) {
  return Coeff::parse(j.get<std::string>(), cutoff);
}

ordered_json word_json(const LInfinityModel& m, const Word& w) {
  ordered_json arr = ordered_json::array();
  for (GenId g : w.letters) arr.push_back(m.generators()[g].name);
  return arr;
}

} // namespace

std::shared_ptr<LInfinityModel> parse_model(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("model file is not valid JSON: ") + e.what());
  }
  ModelFlags fl;
  if (doc.contains("flags")) {
    auto& f = doc["flags"];
    std::string g = f.value("grading_mode", "Z");
    if (g == "Z")
      fl.grading = GradingMode::integer;
    else if (g == "Z/2")
      fl.grading = GradingMode::mod2;
    else
      throw std::invalid_argument("grading_mode must be Z or Z/2");
    std::string a = f.value("algebra_mode", "module");
    if (a == "module")
      fl.algebra = AlgebraMode::module;
    else if (a == "CDGA")
      fl.algebra = AlgebraMode::cdga;
    else
      throw std::invalid_argument("algebra_mode must be module or CDGA");
    std::string c = f.value("cutoff", "none");
    if (c != "none") fl.cutoff = parse_rational(c);
    fl.filtered = f.value("filtered", false);
    fl.nilpotent = f.value("nilpotent", false);
  }
  std::vector<Generator> gens;
  for (auto& g : doc.at("generators"))
    gens.push_back({g.at("name").get<std::string>(), g.at("degree").get<int>(),
                    parse_rational(g.at("action").get<std::string>())});
  auto m = std::make_shared<LInfinityModel>(std::move(gens), fl);

  if (doc.contains("operations")) {
    for (auto& op : doc["operations"]) {
      auto input = names_of(op.at("input"));
      if (op.contains("arity") && op["arity"].get<std::size_t>() != input.size())
        throw std::invalid_argument("operation arity does not match its input word");
      std::vector<std::pair<std::vector<std::string>, Coeff>> output;
      for (auto& t : op.at("output")) output.push_back({names_of(t.at("word")), coeff_of(t.at("coeff"), fl.cutoff)});
      m->add_operation(input, output);
    }
  }
  if (doc.contains("augmentations")) {
    for (auto& a : doc["augmentations"]) {
      AugmentationData aug;
      aug.name = a.at("name").get<std::string>();
      for (auto& c : a.at("codomain"))
        aug.codomain.push_back({c.at("name").get<std::string>(), c.value("degree", 0), Rational(0)});
      for (auto& comp : a.at("components")) {
        auto in = m->signed_word(names_of(comp.at("input")));
        if (in.sign == 0) throw std::invalid_argument("augmentation input is the zero word");
        auto& slot = aug.components[in.word];
        for (auto& t : comp.at("output")) {
          std::string target = t.at("basis").get<std::string>();
          Coeff c = coeff_of(t.at("coeff"), fl.cutoff) * Rational(in.sign);
          auto [it, fresh] = slot.try_emplace(target, c);
          if (!fresh) it->second += c;
        }
      }
      m->add_augmentation(std::move(aug));
    }
  }
  if (doc.contains("mc_elements")) {
    for (auto& e : doc["mc_elements"]) {
      NamedElement ne;
      ne.name = e.at("name").get<std::string>();
      for (auto& t : e.at("value")) add_term(ne.value, m->word(names_of(t.at("word"))), coeff_of(t.at("coeff"), fl.cutoff));
      m->add_mc_element(std::move(ne));
    }
  }
  m->validate();
  return m;
}

std::string print_model(const LInfinityModel& m) {
  ordered_json doc;
  auto& fl = m.flags();
  doc["flags"]["grading_mode"] = fl.grading == GradingMode::integer ? "Z" : "Z/2";
  doc["flags"]["algebra_mode"] = fl.algebra == AlgebraMode::module ? "module" : "CDGA";
  doc["flags"]["cutoff"] = fl.cutoff ? to_string(*fl.cutoff) : "none";
  doc["flags"]["filtered"] = fl.filtered;
  doc["flags"]["nilpotent"] = fl.nilpotent;
  doc["generators"] = ordered_json::array();
  for (auto& g : m.generators().all())
    doc["generators"].push_back({{"name", g.name}, {"degree", g.degree}, {"action", to_string(g.action)}});
  doc["operations"] = ordered_json::array();
  for (auto& [in, out] : m.operations()) {
    ordered_json op;
    op["arity"] = in.size();
    op["input"] = word_json(m, in);
    op["output"] = ordered_json::array();
    for (auto& [w, c] : out) op["output"].push_back({{"word", word_json(m, w)}, {"coeff", c.str()}});
    doc["operations"].push_back(op);
  }
  doc["augmentations"] = ordered_json::array();
  for (auto& a : m.augmentations()) {
    ordered_json aj;
    aj["name"] = a.name;
    aj["codomain"] = ordered_json::array();
    for (auto& c : a.codomain) aj["codomain"].push_back({{"name", c.name}, {"degree", c.degree}});
    aj["components"] = ordered_json::array();
    for (auto& [in, out] : a.components) {
      ordered_json cj;
      cj["input"] = word_json(m, in);
      cj["output"] = ordered_json::array();
      for (auto& [n, c] : out) cj["output"].push_back({{"basis", n}, {"coeff", c.str()}});
      aj["components"].push_back(cj);
    }
    doc["augmentations"].push_back(aj);
  }
  if (!m.mc_elements().empty()) {
    doc["mc_elements"] = ordered_json::array();
    for (auto& e : m.mc_elements()) {
      ordered_json ej;
      ej["name"] = e.name;
      ej["value"] = ordered_json::array();
      for (auto& [w, c] : e.value) ej["value"].push_back({{"word", word_json(m, w)}, {"coeff", c.str()}});
      doc["mc_elements"].push_back(ej);
    }
  }
  return doc.dump(2) + "\n";
}

std::shared_ptr<LInfinityModel> load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

Element parse_element(const LInfinityModel& m, std::string_view text) {
  Element out;
  std::string s(text);
  std::size_t i = 0;
  auto trim = [](std::string t) {
    while (!t.empty() && t.front() == ' ') t.erase(t.begin());
    while (!t.empty() && t.back() == ' ') t.pop_back();
    return t;
  };
  // split on top-level " + " (coefficients are parenthesized if they contain one)
  std::vector<std::string> terms;
  int depth = 0;
  std::string cur;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && ch == '+' && i > 0 && s[i - 1] == ' ') {
      terms.push_back(trim(cur));
      cur.clear();
      continue;
    }
    cur += ch;
  }
  terms.push_back(trim(cur));
  for (auto& t : terms) {
    if (t.empty()) throw std::invalid_argument("empty term in element");
    std::string coeff = "1", name = t;
    if (auto star = t.rfind('*'); star != std::string::npos) {
      coeff = trim(t.substr(0, star));
      name = trim(t.substr(star + 1));
      if (coeff.size() >= 2 && coeff.front() == '(' && coeff.back() == ')') coeff = coeff.substr(1, coeff.size() - 2);
    }
    add_term(out, m.letter(name), Coeff::parse(coeff, m.cutoff()));
  }
  return out;
}

} // namespace symcap
