#include "redist/serialization.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "redist/detail/overloaded.hpp"
#include "redist/error.hpp"

namespace redist {
namespace {

using nlohmann::json;

void write_real(std::string& out, double v) {
  char buf[32];
  const auto [end, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  out.append(buf, end);
}

void write_array(std::string& out, std::span<const double> values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    write_real(out, values[i]);
  }
  out += ']';
}

void write_optional(std::string& out, const std::optional<double>& v) {
  if (v)
    write_real(out, *v);
  else
    out += "null";
}

template <class T>
T field(const json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end()) throw format_error(std::string("missing field '") + name + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw format_error(std::string("field '") + name + "' has the wrong type");
  }
}

std::optional<double> optional_real(const json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw format_error(std::string("field '") + name + "' must be a number or null");
  return it->get<double>();
}

}  // namespace

std::string to_json(const Distribution& d) {
  std::string out = R"({"version":1,"kind":")";
  out += d.kind();
  out += '"';
  std::visit(
      detail::overloaded{
          [&](const LearnedDistribution& l) {
            const auto& lattice = l.lattice();
            out += R"(,"lp":)";
            write_array(out, lattice.lp);
            out += R"(,"lv":)";
            write_array(out, lattice.lv);
            out += R"(,"a":)";
            write_optional(out, lattice.a);
            out += R"(,"b":)";
            write_optional(out, lattice.b);
          },
          [&](const KdeModel& k) {
            out += R"(,"centers":)";
            write_array(out, k.centers());
            out += R"(,"bandwidth":)";
            write_real(out, k.bandwidth());
            out += R"(,"grid_density":)";
            out += std::to_string(k.grid_density());
            out += R"(,"cdf_method":")";
            out += k.cdf_method() == CdfMethod::fast ? "fast" : "precise";
            out += '"';
          },
          [&](const AnalyticDistribution& a) {
            std::visit(detail::overloaded{
                           [&](const Uniform& u) {
                             out += R"(,"family":"uniform","params":)";
                             write_array(out, std::vector{u.a, u.b});
                           },
                           [&](const Normal& n) {
                             out += R"(,"family":"normal","params":)";
                             write_array(out, std::vector{n.mu, n.sigma});
                           },
                           [&](const Exponential& e) {
                             out += R"(,"family":"exponential","params":)";
                             write_array(out, std::vector{e.lambda});
                           },
                       },
                       a.family());
          },
      },
      d.model());
  out += "}\n";
  return out;
}

Distribution from_json(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw format_error(std::string("malformed distribution document: ") + e.what());
  }
  if (!doc.is_object()) throw format_error("distribution document must be a JSON object");
  const auto kind = field<std::string>(doc, "kind");
  if (kind != "learned" && kind != "kde" && kind != "analytic")
    throw format_error("unknown distribution kind '" + kind + "'");
  if (field<int>(doc, "version") != 1)
    throw format_error("unsupported distribution document version");

  try {
    if (kind == "learned") {
      LatticeInterpolant lattice;
      lattice.lp = field<std::vector<double>>(doc, "lp");
      lattice.lv = field<std::vector<double>>(doc, "lv");
      lattice.a = optional_real(doc, "a");
      lattice.b = optional_real(doc, "b");
      const std::size_t bins = lattice.lp.size();
      return LearnedDistribution(std::move(lattice), bins);
    }
    if (kind == "kde") {
      CdfMethod method = CdfMethod::fast;
      if (const auto it = doc.find("cdf_method"); it != doc.end()) {
        const auto name = field<std::string>(doc, "cdf_method");
        if (name == "precise")
          method = CdfMethod::precise;
        else if (name != "fast")
          throw format_error("unknown cdf_method '" + name + "'");
      }
      return KdeModel(field<std::vector<double>>(doc, "centers"),
                      field<double>(doc, "bandwidth"),
                      field<std::size_t>(doc, "grid_density"), method);
    }
    if (kind == "analytic") {
      const auto family = field<std::string>(doc, "family");
      const auto params = field<std::vector<double>>(doc, "params");
      std::string spec = family + ":";
      for (std::size_t i = 0; i < params.size(); ++i) {
        if (i > 0) spec += ',';
        write_real(spec, params[i]);
      }
      return parse_analytic(spec);
    }
  } catch (const domain_error& e) {
    throw format_error(std::string("invalid ") + kind + " document: " + e.what());
  }
  throw format_error("unknown distribution kind '" + kind + "'");
}

void save_distribution(const Distribution& d, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
  out << to_json(d);
  if (!out) throw io_error("failed writing '" + path.string() + "'");
}

Distribution load_distribution(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

}  // namespace redist
