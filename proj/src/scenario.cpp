#include "algchar/scenario.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "algchar/parser.hpp"

namespace algchar {

namespace {

// ---------------------------------------------------------------------------
// Line tokenizer.

struct Tok {
  enum Kind { Word, Str, LBrack, RBrack, Comma } kind;
  std::string text;
};

std::vector<Tok> tokenize_line(const std::string& line, int lineno) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace((unsigned char)c)) {
      ++i;
      continue;
    }
    if (c == '[') {
      out.push_back({Tok::LBrack, "["});
      ++i;
    } else if (c == ']') {
      out.push_back({Tok::RBrack, "]"});
      ++i;
    } else if (c == ',') {
      out.push_back({Tok::Comma, ","});
      ++i;
    } else if (c == '"') {
      std::size_t j = line.find('"', i + 1);
      if (j == std::string::npos)
        throw ParseError("unterminated string", (std::size_t)lineno);
      out.push_back({Tok::Str, line.substr(i + 1, j - i - 1)});
      i = j + 1;
    } else {
      std::size_t j = i;
      while (j < line.size() && !std::isspace((unsigned char)line[j]) &&
             line[j] != '[' && line[j] != ']' && line[j] != ',' && line[j] != '#')
        ++j;
      out.push_back({Tok::Word, line.substr(i, j - i)});
      i = j;
    }
  }
  return out;
}

struct EntryList {
  std::vector<long> ints;
  std::vector<std::string> strs;  // in order of appearance after the ints
};

// Parse "[int, int, ..., "expr"]" style groups: integers first, strings last.
EntryList parse_entry(const std::vector<Tok>& toks, std::size_t& pos, int lineno) {
  EntryList e;
  if (pos >= toks.size() || toks[pos].kind != Tok::LBrack)
    throw ParseError("expected '['", (std::size_t)lineno);
  ++pos;
  bool expect_value = true;
  while (pos < toks.size() && toks[pos].kind != Tok::RBrack) {
    if (toks[pos].kind == Tok::Comma) {
      ++pos;
      expect_value = true;
      continue;
    }
    if (!expect_value)
      throw ParseError("expected ',' in entry", (std::size_t)lineno);
    if (toks[pos].kind == Tok::Word) {
      try {
        e.ints.push_back(std::stol(toks[pos].text));
      } catch (...) {
        throw ParseError("expected an integer in entry", (std::size_t)lineno);
      }
    } else if (toks[pos].kind == Tok::Str) {
      e.strs.push_back(toks[pos].text);
    } else {
      throw ParseError("bad token in entry", (std::size_t)lineno);
    }
    ++pos;
    expect_value = false;
  }
  if (pos >= toks.size()) throw ParseError("unterminated entry", (std::size_t)lineno);
  ++pos;  // consume ']'
  return e;
}

long to_int(const std::string& s, int lineno) {
  try {
    return std::stol(s);
  } catch (...) {
    throw ParseError("expected an integer, got '" + s + "'", (std::size_t)lineno);
  }
}

// ---------------------------------------------------------------------------
// Pending block state while parsing.

struct PendingComplex {
  std::string name;
  std::string algebroid;
  std::vector<int> ranks;
  bool super_only = false;
  bool adjoint = false;
  std::vector<std::tuple<int, int, std::string>> partial_entries;
};

struct PendingMetric {
  std::string name;
  std::string complex_name;
  std::vector<std::tuple<int, int, std::string>> entries;
};

struct PendingConnection {
  std::string name;
  std::string complex_name;
  bool commutes = false;
  std::vector<std::tuple<int, int, int, std::string>> omega_entries;
};

struct PendingAlgebroid {
  std::string name;
  int rank = -1;
  std::vector<std::string> anchor_exprs;
  std::vector<std::tuple<int, int, int, std::string>> structure;
};

struct PendingAux {
  std::string name;
  std::string algebroid;
  std::vector<std::tuple<int, int, int, std::string>> gamma_entries;
};

struct PendingSplitting {
  std::string name;
  std::string algebroid;
  std::map<int, std::vector<std::string>> fbasis, kbasis, nubasis;
  std::vector<std::tuple<int, int, std::string>> alpha, beta;
};

struct PendingForm {
  std::string name;
  std::string algebroid;
  std::vector<std::pair<std::vector<int>, std::string>> components;
};

}  // namespace

// ---------------------------------------------------------------------------

Scenario parse_scenario_text(const std::string& text,
                             std::optional<Field> field_override) {
  Scenario sc;
  if (field_override) sc.field = *field_override;
  bool field_set = field_override.has_value();
  bool ctx_frozen = false;

  auto freeze_ctx = [&] {
    if (!ctx_frozen) {
      sc.ctx = make_context(sc.field, sc.chart, 0);
      ctx_frozen = true;
    }
  };
  auto expr = [&](const std::string& s, int lineno) {
    try {
      return parse_expr(s, sc.ctx);
    } catch (ParseError& e) {
      throw ParseError(std::string(e.what()) + " in expression on line " +
                           std::to_string(lineno),
                       (std::size_t)lineno);
    }
  };
  auto check_fresh = [&](const std::string& name, int lineno) {
    bool taken = sc.algebroids.count(name) || sc.complexes.count(name) ||
                 sc.metrics.count(name) || sc.connections.count(name) ||
                 sc.aux_connections.count(name) || sc.splittings.count(name) ||
                 sc.forms.count(name);
    if (taken)
      throw ParseError("name '" + name + "' already declared", (std::size_t)lineno);
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  // Current open block, at most one kind at a time.
  std::optional<PendingAlgebroid> p_alg;
  std::optional<PendingComplex> p_cx;
  std::optional<PendingMetric> p_met;
  std::optional<PendingConnection> p_conn;
  std::optional<PendingAux> p_aux;
  std::optional<PendingSplitting> p_split;
  std::optional<PendingForm> p_form;
  bool in_block = false;

  auto require_alg = [&](const std::string& name, int ln) -> std::shared_ptr<LieAlgebroid> {
    auto it = sc.algebroids.find(name);
    if (it == sc.algebroids.end())
      throw ParseError("unknown algebroid '" + name + "'", (std::size_t)ln);
    return it->second;
  };

  auto finish_block = [&](int ln) {
    if (p_alg) {
      auto& p = *p_alg;
      if (p.rank < 0) throw ParseError("algebroid without rank", (std::size_t)ln);
      int m = (int)sc.chart.size();
      if ((int)p.anchor_exprs.size() != p.rank * m)
        throw ParseError("anchor needs rank*dim expressions", (std::size_t)ln);
      Matrix anchor(sc.ctx, p.rank, m);
      for (int i = 0; i < p.rank; ++i)
        for (int mu = 0; mu < m; ++mu)
          anchor.at(i, mu) = expr(p.anchor_exprs[(std::size_t)(i * m + mu)], ln);
      std::vector<std::tuple<int, int, int, RatExpr>> triples;
      for (auto& [i, j, k, s] : p.structure)
        triples.emplace_back(i - 1, j - 1, k - 1, expr(s, ln));
      sc.algebroids.emplace(p.name, std::make_shared<LieAlgebroid>(
                                        sc.ctx, p.rank, std::move(anchor), triples));
      p_alg.reset();
    } else if (p_cx) {
      auto& p = *p_cx;
      auto alg = require_alg(p.algebroid, ln);
      std::shared_ptr<SuperComplex> cx;
      if (p.adjoint) {
        cx = adjoint_complex(*alg);
      } else {
        if (p.ranks.empty())
          throw ParseError("complex without ranks", (std::size_t)ln);
        int total = 0;
        for (int r : p.ranks) total += r;
        Matrix partial = Matrix::zero(sc.ctx, total, total);
        for (auto& [r, c, s] : p.partial_entries) {
          if (r < 1 || r > total || c < 1 || c > total)
            throw ParseError("partial entry out of range", (std::size_t)ln);
          partial.at(r - 1, c - 1) = expr(s, ln);
        }
        cx = std::make_shared<SuperComplex>(sc.ctx, p.ranks, !p.super_only,
                                            std::move(partial));
      }
      sc.complexes.emplace(p.name, Scenario::ComplexDecl{cx, p.algebroid});
      p_cx.reset();
    } else if (p_met) {
      auto& p = *p_met;
      auto it = sc.complexes.find(p.complex_name);
      if (it == sc.complexes.end())
        throw ParseError("unknown complex '" + p.complex_name + "'", (std::size_t)ln);
      int total = it->second.cx->total_rank();
      Matrix h = Matrix::zero(sc.ctx, total, total);
      std::vector<std::vector<bool>> set((std::size_t)total,
                                         std::vector<bool>(total, false));
      for (auto& [r, c, s] : p.entries) {
        if (r < 1 || r > total || c < 1 || c > total)
          throw ParseError("metric entry out of range", (std::size_t)ln);
        h.at(r - 1, c - 1) = expr(s, ln);
        set[(std::size_t)(r - 1)][(std::size_t)(c - 1)] = true;
      }
      // Fill unset mirror slots by hermitian symmetry.
      for (int r = 0; r < total; ++r)
        for (int c = 0; c < total; ++c)
          if (set[(std::size_t)r][(std::size_t)c] && !set[(std::size_t)c][(std::size_t)r])
            h.at(c, r) = h.at(r, c).conj();
      sc.metrics.emplace(p.name, Scenario::MetricDecl{
                                     Metric{it->second.cx.get(), std::move(h)},
                                     p.complex_name});
      p_met.reset();
    } else if (p_conn) {
      auto& p = *p_conn;
      auto it = sc.complexes.find(p.complex_name);
      if (it == sc.complexes.end())
        throw ParseError("unknown complex '" + p.complex_name + "'", (std::size_t)ln);
      auto alg = require_alg(it->second.algebroid, ln);
      GConnection conn = zero_connection(*alg, *it->second.cx);
      int total = it->second.cx->total_rank();
      for (auto& [gi, r, c, s] : p.omega_entries) {
        if (gi < 1 || gi > alg->rank() || r < 1 || r > total || c < 1 || c > total)
          throw ParseError("omega entry out of range", (std::size_t)ln);
        conn.omega[(std::size_t)(gi - 1)].at(r - 1, c - 1) = expr(s, ln);
      }
      conn.commutes_with_partial = p.commutes;
      sc.connections.emplace(p.name, std::move(conn));
      p_conn.reset();
    } else if (p_aux) {
      auto& p = *p_aux;
      auto alg = require_alg(p.algebroid, ln);
      int n = alg->rank(), m = alg->dim_m();
      std::vector<Matrix> gammas((std::size_t)m, Matrix::zero(sc.ctx, n, n));
      for (auto& [mu, r, c, s] : p.gamma_entries) {
        if (mu < 1 || mu > m || r < 1 || r > n || c < 1 || c > n)
          throw ParseError("gamma entry out of range", (std::size_t)ln);
        gammas[(std::size_t)(mu - 1)].at(r - 1, c - 1) = expr(s, ln);
      }
      sc.aux_connections.emplace(p.name, Scenario::AuxDecl{std::move(gammas), p.algebroid});
      p_aux.reset();
    } else if (p_split) {
      auto& p = *p_split;
      auto alg = require_alg(p.algebroid, ln);
      int n = alg->rank(), m = alg->dim_m();
      auto build = [&](const std::map<int, std::vector<std::string>>& rows,
                       int cols) {
        int nrows = rows.empty() ? 0 : rows.rbegin()->first;
        Matrix out = Matrix::zero(sc.ctx, nrows, cols);
        for (auto& [idx, vals] : rows) {
          if (idx < 1 || (int)vals.size() != cols)
            throw ParseError("bad frame row", (std::size_t)ln);
          for (int c = 0; c < cols; ++c) out.at(idx - 1, c) = expr(vals[(std::size_t)c], ln);
        }
        return out;
      };
      Matrix fb = build(p.fbasis, m), kb = build(p.kbasis, n), nb = build(p.nubasis, m);
      int f = fb.rows();
      Matrix alpha = Matrix::zero(sc.ctx, n, f), beta = Matrix::zero(sc.ctx, f, m);
      for (auto& [r, c, s] : p.alpha) {
        if (r < 1 || r > n || c < 1 || c > f)
          throw ParseError("alpha entry out of range", (std::size_t)ln);
        alpha.at(r - 1, c - 1) = expr(s, ln);
      }
      for (auto& [r, c, s] : p.beta) {
        if (r < 1 || r > f || c < 1 || c > m)
          throw ParseError("beta entry out of range", (std::size_t)ln);
        beta.at(r - 1, c - 1) = expr(s, ln);
      }
      sc.splittings.emplace(
          p.name, Scenario::SplittingDecl{Splitting{std::move(fb), std::move(kb),
                                                    std::move(nb), std::move(alpha),
                                                    std::move(beta)},
                                          p.algebroid});
      p_split.reset();
    } else if (p_form) {
      auto& p = *p_form;
      auto alg = require_alg(p.algebroid, ln);
      GForm w(alg.get());
      for (auto& [idx, s] : p.components) {
        Tuple t;
        for (int i : idx) {
          if (i < 1 || i > alg->rank())
            throw ParseError("component index out of range", (std::size_t)ln);
          t.push_back(i - 1);
        }
        auto [sorted, sign] = normalize_tuple(t);
        if (sign == 0)
          throw ParseError("repeated index in component", (std::size_t)ln);
        RatExpr v = expr(s, ln);
        w.add_component(sorted, sign > 0 ? v : -v);
      }
      sc.forms.emplace(p.name, Scenario::FormDecl{std::move(w), p.algebroid});
      p_form.reset();
    }
    in_block = false;
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::vector<Tok> toks = tokenize_line(line, lineno);
    if (toks.empty()) continue;
    if (toks[0].kind != Tok::Word)
      throw ParseError("statement must start with a keyword", (std::size_t)lineno);
    const std::string& kw = toks[0].text;
    std::size_t pos = 1;
    auto word = [&]() -> std::string {
      if (pos >= toks.size() || toks[pos].kind != Tok::Word)
        throw ParseError("expected a word after '" + kw + "'", (std::size_t)lineno);
      return toks[pos++].text;
    };

    if (!in_block) {
      if (kw == "field") {
        std::string f = word();
        if (!field_set) {
          if (f == "Q")
            sc.field = Field::Q;
          else if (f == "Qi")
            sc.field = Field::Qi;
          else
            throw ParseError("field must be Q or Qi", (std::size_t)lineno);
        }
        if (ctx_frozen)
          throw ParseError("field after declarations", (std::size_t)lineno);
        continue;
      }
      if (kw == "chart") {
        if (ctx_frozen)
          throw ParseError("chart after declarations", (std::size_t)lineno);
        while (pos < toks.size()) sc.chart.push_back(word());
        continue;
      }
      if (kw == "begin") {
        freeze_ctx();
        std::string type = word();
        std::string name = word();
        check_fresh(name, lineno);
        in_block = true;
        if (type == "algebroid")
          p_alg = PendingAlgebroid{name, -1, {}, {}};
        else if (type == "complex")
          p_cx = PendingComplex{name, "", {}, false, false, {}};
        else if (type == "metric")
          p_met = PendingMetric{name, "", {}};
        else if (type == "connection")
          p_conn = PendingConnection{name, "", false, {}};
        else if (type == "aux_connection")
          p_aux = PendingAux{name, "", {}};
        else if (type == "splitting")
          p_split = PendingSplitting{name, "", {}, {}, {}, {}, {}};
        else if (type == "form")
          p_form = PendingForm{name, "", {}};
        else
          throw ParseError("unknown block type '" + type + "'", (std::size_t)lineno);
        continue;
      }
      if (kw == "task") {
        freeze_ctx();
        Task t;
        {
          std::ostringstream echo;
          bool first = true;
          for (auto& tk : toks) {
            if (&tk == &toks[0]) continue;
            echo << (first ? "" : " ")
                 << (tk.kind == Tok::Str ? "\"" + tk.text + "\"" : tk.text);
            first = false;
          }
          t.echo = echo.str();
        }
        t.kind = word();
        while (pos < toks.size()) {
          std::string w = word();
          auto eq = w.find('=');
          if (eq == std::string::npos)
            t.args.push_back(w);
          else
            t.params[w.substr(0, eq)] = w.substr(eq + 1);
        }
        sc.tasks.push_back(std::move(t));
        continue;
      }
      throw ParseError("unknown statement '" + kw + "'", (std::size_t)lineno);
    }

    // Inside a block.
    if (kw == "end") {
      finish_block(lineno);
      continue;
    }
    if (p_alg) {
      if (kw == "rank")
        p_alg->rank = (int)to_int(word(), lineno);
      else if (kw == "anchor") {
        while (pos < toks.size()) {
          if (toks[pos].kind != Tok::Str)
            throw ParseError("anchor expects quoted expressions", (std::size_t)lineno);
          p_alg->anchor_exprs.push_back(toks[pos++].text);
        }
      } else if (kw == "structure") {
        EntryList e = parse_entry(toks, pos, lineno);
        if (e.ints.size() != 3 || e.strs.size() != 1)
          throw ParseError("structure entry is [i, j, k, \"expr\"]", (std::size_t)lineno);
        p_alg->structure.emplace_back((int)e.ints[0], (int)e.ints[1], (int)e.ints[2],
                                      e.strs[0]);
      } else
        throw ParseError("unknown algebroid field '" + kw + "'", (std::size_t)lineno);
    } else if (p_cx) {
      if (kw == "algebroid")
        p_cx->algebroid = word();
      else if (kw == "ranks") {
        while (pos < toks.size()) p_cx->ranks.push_back((int)to_int(word(), lineno));
      } else if (kw == "super")
        p_cx->super_only = true;
      else if (kw == "adjoint")
        p_cx->adjoint = true;
      else if (kw == "partial") {
        EntryList e = parse_entry(toks, pos, lineno);
        if (e.ints.size() != 2 || e.strs.size() != 1)
          throw ParseError("partial entry is [row, col, \"expr\"]", (std::size_t)lineno);
        p_cx->partial_entries.emplace_back((int)e.ints[0], (int)e.ints[1], e.strs[0]);
      } else
        throw ParseError("unknown complex field '" + kw + "'", (std::size_t)lineno);
    } else if (p_met) {
      if (kw == "complex")
        p_met->complex_name = word();
      else if (kw == "entry") {
        EntryList e = parse_entry(toks, pos, lineno);
        if (e.ints.size() != 2 || e.strs.size() != 1)
          throw ParseError("metric entry is [row, col, \"expr\"]", (std::size_t)lineno);
        p_met->entries.emplace_back((int)e.ints[0], (int)e.ints[1], e.strs[0]);
      } else
        throw ParseError("unknown metric field '" + kw + "'", (std::size_t)lineno);
    } else if (p_conn) {
      if (kw == "complex")
        p_conn->complex_name = word();
      else if (kw == "commutes")
        p_conn->commutes = true;
      else if (kw == "omega") {
        int gi = (int)to_int(word(), lineno);
        EntryList e = parse_entry(toks, pos, lineno);
        if (e.ints.size() != 2 || e.strs.size() != 1)
          throw ParseError("omega entry is [row, col, \"expr\"]", (std::size_t)lineno);
        p_conn->omega_entries.emplace_back(gi, (int)e.ints[0], (int)e.ints[1], e.strs[0]);
      } else
        throw ParseError("unknown connection field '" + kw + "'", (std::size_t)lineno);
    } else if (p_aux) {
      if (kw == "algebroid")
        p_aux->algebroid = word();
      else if (kw == "gamma") {
        int mu = (int)to_int(word(), lineno);
        EntryList e = parse_entry(toks, pos, lineno);
        if (e.ints.size() != 2 || e.strs.size() != 1)
          throw ParseError("gamma entry is [row, col, \"expr\"]", (std::size_t)lineno);
        p_aux->gamma_entries.emplace_back(mu, (int)e.ints[0], (int)e.ints[1], e.strs[0]);
      } else
        throw ParseError("unknown aux_connection field '" + kw + "'", (std::size_t)lineno);
    } else if (p_split) {
      auto frame_row = [&](std::map<int, std::vector<std::string>>& dest) {
        int idx = (int)to_int(word(), lineno);
        std::vector<std::string> vals;
        while (pos < toks.size()) {
          if (toks[pos].kind != Tok::Str)
            throw ParseError("frame rows expect quoted expressions", (std::size_t)lineno);
          vals.push_back(toks[pos++].text);
        }
        dest[idx] = std::move(vals);
      };
      if (kw == "algebroid")
        p_split->algebroid = word();
      else if (kw == "fbasis")
        frame_row(p_split->fbasis);
      else if (kw == "kbasis")
        frame_row(p_split->kbasis);
      else if (kw == "nubasis")
        frame_row(p_split->nubasis);
      else if (kw == "alpha" || kw == "beta") {
        EntryList e = parse_entry(toks, pos, lineno);
        if (e.ints.size() != 2 || e.strs.size() != 1)
          throw ParseError("entry is [row, col, \"expr\"]", (std::size_t)lineno);
        auto& dest = kw == "alpha" ? p_split->alpha : p_split->beta;
        dest.emplace_back((int)e.ints[0], (int)e.ints[1], e.strs[0]);
      } else
        throw ParseError("unknown splitting field '" + kw + "'", (std::size_t)lineno);
    } else if (p_form) {
      if (kw == "algebroid")
        p_form->algebroid = word();
      else if (kw == "component") {
        EntryList e = parse_entry(toks, pos, lineno);
        if (e.strs.size() != 1)
          throw ParseError("component is [indices...] \"expr\"... ", (std::size_t)lineno);
        std::vector<int> idx;
        for (long v : e.ints) idx.push_back((int)v);
        if (pos < toks.size() && toks[pos].kind == Tok::Str)
          throw ParseError("component expression goes inside the brackets",
                           (std::size_t)lineno);
        p_form->components.emplace_back(std::move(idx), e.strs[0]);
      } else
        throw ParseError("unknown form field '" + kw + "'", (std::size_t)lineno);
    }
  }
  if (in_block) throw ParseError("unterminated block", (std::size_t)lineno);
  freeze_ctx();
  return sc;
}

Scenario parse_scenario_file(const std::string& path,
                             std::optional<Field> field_override) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str(), field_override);
}

// ---------------------------------------------------------------------------
// Report rendering.

nlohmann::ordered_json form_to_json(const GForm& w) {
  nlohmann::ordered_json comps = nlohmann::ordered_json::array();
  for (auto& [t, v] : w.components()) {
    nlohmann::ordered_json idx = nlohmann::ordered_json::array();
    for (int i : t) idx.push_back(i + 1);
    comps.push_back({idx, v.str()});
  }
  return {{"components", comps}};
}

namespace {

nlohmann::ordered_json matrix_to_json(const Matrix& m) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (!m.at(r, c).is_zero())
        entries.push_back({r + 1, c + 1, m.at(r, c).str()});
  return entries;
}

nlohmann::ordered_json mform_to_json(const MForm& w) {
  nlohmann::ordered_json comps = nlohmann::ordered_json::array();
  for (auto& [t, m] : w.components()) {
    nlohmann::ordered_json idx = nlohmann::ordered_json::array();
    for (int i : t) idx.push_back(i + 1);
    comps.push_back({idx, matrix_to_json(m)});
  }
  return {{"components", comps}};
}

}  // namespace

bool Report::failed() const {
  for (auto& r : records)
    if (r.status == "VIOLATION" || r.status == "ERROR") return true;
  return false;
}

nlohmann::ordered_json Report::machine() const {
  nlohmann::ordered_json tasks = nlohmann::ordered_json::array();
  for (auto& r : records)
    tasks.push_back(
        {{"task", r.echo}, {"status", r.status}, {"result", r.result}});
  return {{"field", field_name(field)},
          {"chart", chart},
          {"tasks", tasks}};
}

std::string Report::human() const {
  std::ostringstream os;
  os << "field " << field_name(field) << ", chart [";
  for (std::size_t i = 0; i < chart.size(); ++i) os << (i ? " " : "") << chart[i];
  os << "]\n";
  for (auto& r : records) {
    os << "task " << r.echo << "\n  status " << r.status << "  (" << r.millis
       << " ms)\n";
    if (!r.result.is_null()) os << "  " << r.result.dump() << "\n";
  }
  os << (failed() ? "FAILED" : "OK") << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Task execution.

namespace {

using nlohmann::ordered_json;

struct Runner {
  Scenario& sc;
  const RunOptions& opts;
  Report& rep;

  const std::shared_ptr<LieAlgebroid>& algebroid(const std::string& n) {
    auto it = sc.algebroids.find(n);
    if (it == sc.algebroids.end()) throw Error("unknown algebroid '" + n + "'");
    return it->second;
  }
  Scenario::ComplexDecl& complex_decl(const std::string& n) {
    auto it = sc.complexes.find(n);
    if (it == sc.complexes.end()) throw Error("unknown complex '" + n + "'");
    return it->second;
  }
  Metric& metric(const std::string& n) {
    auto it = sc.metrics.find(n);
    if (it == sc.metrics.end()) throw Error("unknown metric '" + n + "'");
    return it->second.metric;
  }
  GConnection& connection(const std::string& n) {
    auto it = sc.connections.find(n);
    if (it == sc.connections.end()) throw Error("unknown connection '" + n + "'");
    return it->second;
  }
  const GForm& form(const std::string& n) {
    auto it = sc.forms.find(n);
    if (it == sc.forms.end()) throw Error("unknown form '" + n + "'");
    return it->second.form;
  }
  static std::string param(const Task& t, const std::string& key) {
    auto it = t.params.find(key);
    if (it == t.params.end()) throw Error("task needs parameter " + key + "=");
    return it->second;
  }
  static int int_param(const Task& t, const std::string& key) {
    return (int)std::stol(param(t, key));
  }

  TruncationWindow window(std::initializer_list<const GForm*> forms) {
    if (opts.truncation) return TruncationWindow{*opts.truncation};
    return default_window(forms);
  }

  void record(const std::string& echo, const std::string& status,
              ordered_json result, double ms) {
    rep.records.push_back({echo, status, std::move(result), ms});
  }

  void run_validations();
  void run_check_suite();
  void run_task(const Task& t);
  std::pair<std::string, ordered_json> dispatch(const Task& t);
};

void Runner::run_validations() {
  auto add = [&](const std::string& what, const std::string& name,
                 ValidationReport r) {
    ordered_json res;
    res["problems"] = r.problems;
    record("validate " + what + " " + name, r.ok() ? "OK" : "VIOLATION", res, 0.0);
  };
  for (auto& [name, alg] : sc.algebroids) add("algebroid", name, alg->validate());
  for (auto& [name, decl] : sc.complexes) add("complex", name, decl.cx->validate());
  for (auto& [name, decl] : sc.metrics) add("metric", name, decl.metric.validate());
  for (auto& [name, conn] : sc.connections) {
    if (!conn.alg->validated()) continue;  // already reported above
    add("connection", name, conn.validate());
  }
  for (auto& [name, decl] : sc.splittings) {
    auto alg = sc.algebroids.at(decl.algebroid);
    if (!alg->validated()) continue;
    add("splitting", name, decl.s.validate(*alg));
  }
}

void Runner::run_check_suite() {
  // Identity battery beyond plain validation.
  for (auto& [name, alg] : sc.algebroids) {
    if (!alg->validated()) continue;
    ValidationReport r;
    for (int i = 0; i < alg->rank(); ++i) {
      GForm w(alg.get());
      w.set_component({i}, RatExpr::one(sc.ctx));
      if (!d_algebroid(*alg, d_algebroid(*alg, w)).is_zero())
        r.add("d^2 nonzero on generator dual " + std::to_string(i + 1));
    }
    for (int mu = 0; mu < alg->dim_m(); ++mu) {
      GForm w = GForm::function(alg.get(), RatExpr::variable(sc.ctx, mu));
      if (!d_algebroid(*alg, d_algebroid(*alg, w)).is_zero())
        r.add("d^2 nonzero on coordinate " + std::to_string(mu + 1));
    }
    ordered_json res;
    res["problems"] = r.problems;
    record("check d2 " + name, r.ok() ? "OK" : "VIOLATION", res, 0.0);
  }
  for (auto& [name, conn] : sc.connections) {
    if (!conn.alg->validated()) continue;
    ValidationReport r;
    MForm k = curvature(conn);
    if (!cov_ext_derivative(conn, k).is_zero()) r.add("Bianchi identity fails");
    if (supertrace(cov_ext_derivative(conn, k)) !=
        d_algebroid(*conn.alg, supertrace(k)))
      r.add("supertrace does not intertwine the differentials");
    ordered_json res;
    res["problems"] = r.problems;
    record("check connection " + name, r.ok() ? "OK" : "VIOLATION", res, 0.0);
  }
}

std::pair<std::string, ordered_json> Runner::dispatch(const Task& t) {
  ordered_json res;
  if (t.kind == "validate") {
    if (t.args.size() != 1) throw Error("task validate NAME");
    const std::string& n = t.args[0];
    ValidationReport r;
    if (sc.algebroids.count(n))
      r = sc.algebroids.at(n)->validate();
    else if (sc.complexes.count(n))
      r = sc.complexes.at(n).cx->validate();
    else if (sc.metrics.count(n))
      r = sc.metrics.at(n).metric.validate();
    else if (sc.connections.count(n))
      r = sc.connections.at(n).validate();
    else if (sc.splittings.count(n))
      r = sc.splittings.at(n).s.validate(
          *algebroid(sc.splittings.at(n).algebroid));
    else
      throw Error("unknown object '" + n + "'");
    res["problems"] = r.problems;
    return {r.ok() ? "OK" : "VIOLATION", res};
  }
  if (t.kind == "cohomology") {
    if (t.args.size() != 1) throw Error("task cohomology ALGEBROID");
    res["dims"] = cohomology_dims(*algebroid(t.args[0]));
    return {"OK", res};
  }
  if (t.kind == "ch") {
    if (t.args.size() != 1) throw Error("task ch CONNECTION p=P");
    GForm w = chern_character(connection(t.args[0]), int_param(t, "p"));
    res["form"] = form_to_json(w);
    res["closed"] = d_algebroid(*connection(t.args[0]).alg, w).is_zero();
    return {res["closed"].get<bool>() ? "OK" : "VIOLATION", res};
  }
  if (t.kind == "cs") {
    if (t.args.size() < 1) throw Error("task cs CONN... p=P");
    std::vector<const GConnection*> conns;
    for (auto& a : t.args) conns.push_back(&connection(a));
    res["form"] = form_to_json(chern_simons(conns, int_param(t, "p")));
    return {"OK", res};
  }
  if (t.kind == "secondary") {
    if (t.args.size() != 1) throw Error("task secondary i|ii|real ...");
    const std::string& variant = t.args[0];
    int p = int_param(t, "p");
    GForm w(nullptr);
    const LieAlgebroid* alg = nullptr;
    if (variant == "i") {
      GConnection& fl = connection(param(t, "flat"));
      w = secondary_class_i(fl, connection(param(t, "ref")),
                            metric(param(t, "metric")), p);
      alg = fl.alg;
    } else if (variant == "ii") {
      GConnection& c0 = connection(param(t, "ref"));
      w = secondary_class_ii(c0, metric(param(t, "metric")), p);
      alg = c0.alg;
    } else if (variant == "real") {
      GConnection& c0 = connection(param(t, "ref"));
      w = secondary_class_real(c0, connection(param(t, "mconn")), p);
      alg = c0.alg;
    } else {
      throw Error("secondary variant must be i, ii or real");
    }
    res["form"] = form_to_json(w);
    bool closed = d_algebroid(*alg, w).is_zero();
    bool real = w.conj() == w;
    res["closed"] = closed;
    res["real"] = real;
    return {closed && real ? "OK" : "VIOLATION", res};
  }
  if (t.kind == "fedosov") {
    if (t.args.size() != 1) throw Error("task fedosov COMPLEX connection= metric=");
    auto& decl = complex_decl(t.args[0]);
    GConnection& conn = connection(param(t, "connection"));
    Metric* h = nullptr;
    Metric ident{decl.cx.get(), Matrix::identity(sc.ctx, decl.cx->total_rank())};
    if (t.params.count("metric"))
      h = &metric(t.params.at("metric"));
    else
      h = &ident;
    Superconnection a = fedosov_superconnection(*decl.cx, conn, *h);
    ordered_json pieces;
    for (auto& [j, piece] : a.pieces)
      pieces[std::to_string(j)] = mform_to_json(piece);
    res["pieces"] = pieces;
    MForm residual = superconnection_square(a);
    res["residual"] = mform_to_json(residual);
    return {residual.is_zero() ? "OK" : "VIOLATION", res};
  }
  if (t.kind == "intrinsic") {
    if (t.args.size() != 1) throw Error("task intrinsic ALGEBROID p= [aux=]");
    auto alg = algebroid(t.args[0]);
    int p = int_param(t, "p");
    auto adcx = adjoint_complex(*alg);
    std::vector<Matrix> aux((std::size_t)alg->dim_m(),
                            Matrix::zero(sc.ctx, alg->rank(), alg->rank()));
    if (t.params.count("aux")) {
      auto it = sc.aux_connections.find(t.params.at("aux"));
      if (it == sc.aux_connections.end())
        throw Error("unknown aux_connection '" + t.params.at("aux") + "'");
      aux = it->second.gammas;
    }
    GConnection bas = basic_connection(*alg, *adcx, aux);
    Metric ident = identity_metric(*adcx);
    GConnection mconn = metric_connection(ident, *alg, *adcx);
    GForm u = intrinsic_classes(*alg, p, bas, mconn);
    res["form"] = form_to_json(u);
    ExactnessResult ex = is_exact(*alg, u, window({&u}));
    switch (ex.status) {
      case Exactness::EXACT:
        res["class"] = "EXACT";
        res["witness"] = form_to_json(*ex.primitive);
        break;
      case Exactness::NOT_EXACT:
        res["class"] = "NOT_EXACT";
        break;
      case Exactness::NOT_FOUND_AT_TRUNCATION:
        res["class"] = "NOT_FOUND_AT_TRUNCATION";
        break;
    }
    return {ex.status == Exactness::NOT_FOUND_AT_TRUNCATION ? "UNDECIDED" : "OK",
            res};
  }
  if (t.kind == "bott") {
    if (t.args.size() != 1) throw Error("task bott ALGEBROID splitting=");
    auto alg = algebroid(t.args[0]);
    auto it = sc.splittings.find(param(t, "splitting"));
    if (it == sc.splittings.end()) throw Error("unknown splitting");
    BottRepresentations reps = bott_representation(*alg, it->second.s);
    ordered_json k_omegas = ordered_json::array(), nu_omegas = ordered_json::array();
    for (auto& m : reps.on_k.omega) k_omegas.push_back(matrix_to_json(m));
    for (auto& m : reps.on_nu.omega) nu_omegas.push_back(matrix_to_json(m));
    res["on_k"] = k_omegas;
    res["on_nu"] = nu_omegas;
    bool flat = curvature(reps.on_k).is_zero() && curvature(reps.on_nu).is_zero();
    res["flat"] = flat;
    return {flat ? "OK" : "VIOLATION", res};
  }
  if (t.kind == "compare") {
    if (t.args.size() != 2) throw Error("task compare FORM FORM [D=]");
    const GForm& w = form(t.args[0]);
    const GForm& v = form(t.args[1]);
    auto alg = algebroid(sc.forms.at(t.args[0]).algebroid);
    TruncationWindow win = t.params.count("D")
                               ? TruncationWindow{int_param(t, "D")}
                               : window({&w, &v});
    CompareResult r = classes_equal(*alg, w, v, win);
    switch (r.status) {
      case ClassCompare::EQUAL:
        res["relation"] = "EQUAL";
        res["witness"] = form_to_json(*r.witness);
        return {"OK", res};
      case ClassCompare::NOT_EQUAL:
        res["relation"] = "NOT_EQUAL";
        return {"OK", res};
      default:
        res["relation"] = "UNDECIDED_AT_TRUNCATION";
        return {"UNDECIDED", res};
    }
  }
  throw Error("unknown task '" + t.kind + "'");
}

void Runner::run_task(const Task& t) {
  auto start = std::chrono::steady_clock::now();
  try {
    auto [status, res] = dispatch(t);
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    record(t.echo, status, std::move(res), ms);
  } catch (const std::exception& e) {
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    record(t.echo, "ERROR", ordered_json{{"message", e.what()}}, ms);
  }
}

}  // namespace

Report run_scenario(Scenario& sc, const RunOptions& opts) {
  Report rep;
  rep.field = sc.field;
  rep.chart = sc.chart;
  Runner runner{sc, opts, rep};
  runner.run_validations();
  if (opts.check) runner.run_check_suite();
  for (const Task& t : sc.tasks) runner.run_task(t);
  return rep;
}

}  // namespace algchar
