#include "rtc/io.hpp"

#include "rtc/errors.hpp"
#include "rtc/map_dsl.hpp"

#include <nlohmann/json.hpp>

#include <limits>

namespace rtc {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Source {
  fs::path path;
  json doc;

  std::string where(const std::string& field) const { return path.string() + ": " + field; }
  fs::path resolve(const std::string& ref) const {
    fs::path p(ref);
    return p.is_absolute() ? p : path.parent_path() / p;
  }
};

Source read_json(const fs::path& path) {
  std::string text = read_text_file(path);
  try {
    return Source{path, json::parse(text)};
  } catch (const json::parse_error& e) {
    std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(path.string() + ": malformed JSON", offset, line, column);
  }
}

const json& field(const Source& src, const json& obj, const std::string& name, const std::string& context) {
  if (!obj.is_object()) throw ParseError(src.where(context + " is not an object"));
  auto it = obj.find(name);
  if (it == obj.end()) throw ParseError(src.where(context + " is missing '" + name + "'"));
  return *it;
}

std::string string_field(const Source& src, const json& obj, const std::string& name, const std::string& context) {
  const json& v = field(src, obj, name, context);
  if (!v.is_string()) throw ParseError(src.where(context + "." + name + " must be a string"));
  return v.get<std::string>();
}

const json& array_field(const Source& src, const json& obj, const std::string& name, const std::string& context) {
  const json& v = field(src, obj, name, context);
  if (!v.is_array()) throw ParseError(src.where(context + "." + name + " must be an array"));
  return v;
}

std::size_t size_field(const Source& src, const json& obj, const std::string& name, const std::string& context) {
  const json& v = field(src, obj, name, context);
  if (!v.is_number_unsigned()) throw ParseError(src.where(context + "." + name + " must be a non-negative integer"));
  return v.get<std::size_t>();
}

double bound(const Source& src, const json& v, const std::string& context) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw ParseError(src.where(context + " must be a number, \"inf\" or \"-inf\""));
}

Box parse_box(const Source& src, const json& v, std::size_t dim, const std::string& context) {
  if (!v.is_array()) throw ParseError(src.where(context + " must be an array of [lo, hi] pairs"));
  if (v.size() != dim) {
    throw DimensionMismatch(src.where(context + " has " + std::to_string(v.size()) + " sides, expected " +
                                      std::to_string(dim)));
  }
  Box box;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::string ctx = context + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != 2) throw ParseError(src.where(ctx + " must be a [lo, hi] pair"));
    double lo = bound(src, v[i][0], ctx);
    double hi = bound(src, v[i][1], ctx);
    if (!(lo < hi)) throw ParseError(src.where(ctx + " is empty"));
    box.bounds.emplace_back(lo, hi);
  }
  return box;
}

Box optional_box(const Source& src, const json& obj, const std::string& name, std::size_t dim,
                 const std::string& context) {
  auto it = obj.find(name);
  if (it == obj.end()) return Box::unbounded(dim);
  return parse_box(src, *it, dim, context + "." + name);
}

SmoothMap parse_map_field(const Source& src, const json& obj, const std::string& name, const std::string& context,
                          std::size_t dom, std::size_t cod) {
  std::string text = string_field(src, obj, name, context);
  std::string ctx = context + "." + name;
  SmoothMap m;
  try {
    m = parse_map(text);
  } catch (const UnboundVariable& e) {
    throw UnboundVariable(src.where(ctx + ": " + e.what()));
  } catch (const ParseError& e) {
    throw ParseError(src.where(ctx + ": " + e.what()));
  } catch (const DimensionMismatch& e) {
    throw DimensionMismatch(src.where(ctx + ": " + e.what()));
  }
  if (m.dom_dim() != dom || m.cod_dim() != cod) {
    throw DimensionMismatch(src.where(ctx + " is a map R^" + std::to_string(m.dom_dim()) + " -> R^" +
                                      std::to_string(m.cod_dim()) + ", expected R^" + std::to_string(dom) +
                                      " -> R^" + std::to_string(cod)));
  }
  return m;
}

template <class F>
auto with_file(const fs::path& path, F&& body) {
  try {
    return body();
  } catch (const InvariantViolation& e) {
    throw InvariantViolation(e.invariant(), path.string() + ": " + e.detail());
  } catch (const DomainError& e) {
    throw DomainError(path.string() + ": " + e.what());
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<std::pair<std::string, SmoothMap>> chart_components(const Source& src, const Atlas& atlas,
                                                                std::size_t cod) {
  std::vector<std::pair<std::string, SmoothMap>> out;
  const json& list = array_field(src, src.doc, "components", "document");
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string ctx = "components[" + std::to_string(i) + "]";
    std::string chart = string_field(src, list[i], "chart", ctx);
    if (!atlas.has_chart(chart)) throw ParseError(src.where(ctx + ".chart names unknown chart '" + chart + "'"));
    out.emplace_back(chart, parse_map_field(src, list[i], "map", ctx, atlas.dim(), cod));
  }
  return out;
}

}  // namespace

AtlasPtr load_atlas(const fs::path& path) {
  Source src = read_json(path);
  return with_file(path, [&] {
    std::size_t dim = size_field(src, src.doc, "dim", "document");
    std::string name = src.doc.contains("name") ? string_field(src, src.doc, "name", "document") : path.stem().string();
    std::vector<Chart> charts;
    const json& cl = array_field(src, src.doc, "charts", "document");
    for (std::size_t i = 0; i < cl.size(); ++i) {
      std::string ctx = "charts[" + std::to_string(i) + "]";
      charts.push_back(Chart{string_field(src, cl[i], "id", ctx), parse_box(src, field(src, cl[i], "box", ctx), dim,
                                                                            ctx + ".box")});
    }
    std::vector<Atlas::TransitionSpec> transitions;
    if (src.doc.contains("transitions")) {
      const json& tl = array_field(src, src.doc, "transitions", "document");
      for (std::size_t i = 0; i < tl.size(); ++i) {
        std::string ctx = "transitions[" + std::to_string(i) + "]";
        transitions.push_back(Atlas::TransitionSpec{string_field(src, tl[i], "from", ctx),
                                                    string_field(src, tl[i], "to", ctx),
                                                    parse_map_field(src, tl[i], "map", ctx, dim, dim),
                                                    optional_box(src, tl[i], "overlap_box", dim, ctx)});
      }
    }
    auto atlas = std::make_shared<const Atlas>(name, dim, std::move(charts), std::move(transitions));
    validate_atlas(*atlas);
    return AtlasPtr(atlas);
  });
}

ManifoldMap load_manifold_map(const fs::path& path) {
  Source src = read_json(path);
  AtlasPtr source = load_atlas(src.resolve(string_field(src, src.doc, "source", "document")));
  AtlasPtr target = load_atlas(src.resolve(string_field(src, src.doc, "target", "document")));
  return with_file(path, [&] {
    std::string name = src.doc.contains("name") ? string_field(src, src.doc, "name", "document") : path.stem().string();
    std::vector<LocalRep> reps;
    const json& rl = array_field(src, src.doc, "representatives", "document");
    for (std::size_t i = 0; i < rl.size(); ++i) {
      std::string ctx = "representatives[" + std::to_string(i) + "]";
      std::string sc = string_field(src, rl[i], "source_chart", ctx);
      std::string tc = string_field(src, rl[i], "target_chart", ctx);
      if (!source->has_chart(sc)) throw ParseError(src.where(ctx + ".source_chart names unknown chart '" + sc + "'"));
      if (!target->has_chart(tc)) throw ParseError(src.where(ctx + ".target_chart names unknown chart '" + tc + "'"));
      reps.push_back(LocalRep{sc, tc, parse_map_field(src, rl[i], "map", ctx, source->dim(), target->dim()),
                              optional_box(src, rl[i], "box", source->dim(), ctx), {}, {}});
    }
    return ManifoldMap(name, source, target, std::move(reps));
  });
}

CovectorField load_covector_field(const fs::path& path) {
  Source src = read_json(path);
  AtlasPtr atlas = load_atlas(src.resolve(string_field(src, src.doc, "atlas", "document")));
  return with_file(path, [&] {
    CovectorField field = CovectorField::from_components(atlas, chart_components(src, *atlas, atlas->dim()));
    FieldCheck check = check_overlap_compatibility(field);
    if (!check.passed) {
      throw InvariantViolation("overlap-compatibility",
                               "components disagree on a chart overlap by " + std::to_string(check.max_error));
    }
    return field;
  });
}

MetricField load_metric(const fs::path& path) {
  Source src = read_json(path);
  AtlasPtr atlas = load_atlas(src.resolve(string_field(src, src.doc, "atlas", "document")));
  return with_file(path, [&] {
    MetricField metric(atlas, chart_components(src, *atlas, atlas->dim() * atlas->dim()));
    FieldCheck check = check_metric(metric);
    if (!check.passed) throw InvariantViolation("metric-spd", "metric is not symmetric positive definite");
    return metric;
  });
}

CocycleBundle load_cocycle_bundle(const fs::path& path) {
  Source src = read_json(path);
  AtlasPtr base = load_atlas(src.resolve(string_field(src, src.doc, "base", "document")));
  return with_file(path, [&] {
    std::string name = src.doc.contains("name") ? string_field(src, src.doc, "name", "document") : path.stem().string();
    std::size_t k = size_field(src, src.doc, "fibre_dim", "document");
    std::vector<FibreTransition> table;
    const json& tl = array_field(src, src.doc, "transitions", "document");
    for (std::size_t i = 0; i < tl.size(); ++i) {
      std::string ctx = "transitions[" + std::to_string(i) + "]";
      table.push_back(FibreTransition{string_field(src, tl[i], "from", ctx), string_field(src, tl[i], "to", ctx),
                                      parse_map_field(src, tl[i], "matrix", ctx, base->dim(), k * k),
                                      optional_box(src, tl[i], "overlap_box", base->dim(), ctx)});
    }
    CocycleBundle bundle(name, base, k, std::move(table));
    BundleReport report = verify_bundle_axioms(bundle);
    if (const LawCheck* bad = report.first_failure()) {
      throw InvariantViolation(bad->name, bad->result.detail.empty() ? "bundle check failed" : bad->result.detail);
    }
    return bundle;
  });
}

}  // namespace rtc
