// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#include "core/store.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "core/errors.hpp"
#include "core/text_io.hpp"

namespace evograph {

namespace {

std::string key_str(VertexId src, VertexId dst) {
  return "(" + std::to_string(src) + ", " + std::to_string(dst) + ")";
}

void check_edge_valid(const Edge& e, std::uint32_t vertex_count) {
  if (e.src >= vertex_count || e.dst >= vertex_count) {
    raise(ErrorCode::VertexOutOfRange,
          "edge " + key_str(e.src, e.dst) + " outside vertex range [0, " +
              std::to_string(vertex_count) + ")");
  }
  if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
    raise(ErrorCode::InvalidArgument,
          "edge " + key_str(e.src, e.dst) + " has non-positive weight");
  }
}

}  // namespace

EvolvingGraphStore::EvolvingGraphStore(EdgeSet base, std::uint32_t vertex_count)
    : vertex_count_(vertex_count), snapshot_count_(1), base_edges_(std::move(base)) {
  for (const Edge& e : base_edges_) {
    check_edge_valid(e, vertex_count_);
    runs_[{e.src, e.dst}].push_back(Run{0, kOpen, e.weight});
  }
}

int EvolvingGraphStore::new_version(const DeltaBatch& batch) {
  for (const Edge& e : batch.additions) check_edge_valid(e, vertex_count_);
  for (const Edge& e : batch.deletions) {
    if (e.src >= vertex_count_ || e.dst >= vertex_count_) {
      raise(ErrorCode::VertexOutOfRange,
            "edge " + key_str(e.src, e.dst) + " outside vertex range [0, " +
                std::to_string(vertex_count_) + ")");
    }
  }
  if (!batch.additions.intersect(batch.deletions).empty()) {
    const Edge clash = batch.additions.intersect(batch.deletions)[0];
    raise(ErrorCode::InvalidArgument,
          "batch both adds and deletes edge " + key_str(clash.src, clash.dst));
  }
  const int last = snapshot_count_ - 1;
  for (const Edge& e : batch.deletions) {
    auto it = runs_.find({e.src, e.dst});
    if (it == runs_.end() || !present_at(it->second, last, nullptr)) {
      raise(ErrorCode::DeleteMissingEdge,
            "cannot delete absent edge " + key_str(e.src, e.dst));
    }
  }
  for (const Edge& e : batch.additions) {
    auto it = runs_.find({e.src, e.dst});
    if (it != runs_.end() && present_at(it->second, last, nullptr)) {
      raise(ErrorCode::AddExistingEdge,
            "cannot add already-present edge " + key_str(e.src, e.dst));
    }
  }

  // Validation passed; commit. Open runs implicitly extend through the new
  // snapshot, deleted edges close at the previous last snapshot, added edges
  // open a fresh run.
  for (const Edge& e : batch.deletions) {
    runs_[{e.src, e.dst}].back().end = last;
  }
  const int added_at = snapshot_count_;
  for (const Edge& e : batch.additions) {
    runs_[{e.src, e.dst}].push_back(Run{added_at, kOpen, e.weight});
  }
  transitions_.push_back(batch);
  ++snapshot_count_;
  return snapshot_count_ - 1;
}

bool EvolvingGraphStore::present_at(const std::vector<Run>& runs, int t,
                                    double* weight_out) const {
  for (const Run& r : runs) {
    if (r.start <= t && t <= run_end(r)) {
      if (weight_out) *weight_out = r.weight;
      return true;
    }
  }
  return false;
}

bool EvolvingGraphStore::covers(const std::vector<Run>& runs, Interval iv,
                                double* weight_out) const {
  // Runs are disjoint with gaps, so a contiguous interval fits in at most one.
  for (const Run& r : runs) {
    if (r.start <= iv.lo && iv.hi <= run_end(r)) {
      if (weight_out) *weight_out = r.weight;
      return true;
    }
  }
  return false;
}

void EvolvingGraphStore::check_snapshot(int t) const {
  if (t < 0 || t >= snapshot_count_) {
    raise(ErrorCode::UnknownSnapshot,
          "snapshot " + std::to_string(t) + " outside [0, " +
              std::to_string(snapshot_count_) + ")");
  }
}

void EvolvingGraphStore::check_interval(Interval iv) const {
  check_snapshot(iv.lo);
  check_snapshot(iv.hi);
  if (iv.lo > iv.hi) {
    raise(ErrorCode::UnknownSnapshot,
          "empty interval [" + std::to_string(iv.lo) + ", " +
              std::to_string(iv.hi) + "]");
  }
}

EdgeSet EvolvingGraphStore::get_version(int t) const {
  check_snapshot(t);
  std::vector<Edge> out;
  for (const auto& [key, runs] : runs_) {
    double w = 0.0;
    if (present_at(runs, t, &w)) out.push_back(Edge{key.first, key.second, w});
  }
  return EdgeSet::from_sorted_unique(std::move(out));
}

DeltaBatch EvolvingGraphStore::diff(int a, int b) const {
  check_snapshot(a);
  check_snapshot(b);
  std::vector<Edge> adds;
  std::vector<Edge> dels;
  for (const auto& [key, runs] : runs_) {
    double wa = 0.0;
    double wb = 0.0;
    const bool in_a = present_at(runs, a, &wa);
    const bool in_b = present_at(runs, b, &wb);
    if (in_b && !in_a) adds.push_back(Edge{key.first, key.second, wb});
    if (in_a && !in_b) dels.push_back(Edge{key.first, key.second, wa});
  }
  return DeltaBatch{EdgeSet::from_sorted_unique(std::move(adds)),
                    EdgeSet::from_sorted_unique(std::move(dels))};
}

EdgeSet EvolvingGraphStore::common_edges(Interval iv) const {
  check_interval(iv);
  std::vector<Edge> out;
  for (const auto& [key, runs] : runs_) {
    double w = 0.0;
    if (covers(runs, iv, &w)) out.push_back(Edge{key.first, key.second, w});
  }
  return EdgeSet::from_sorted_unique(std::move(out));
}

EdgeSet EvolvingGraphStore::cover_difference(Interval outer, Interval inner) const {
  check_interval(outer);
  check_interval(inner);
  if (!outer.contains(inner)) {
    raise(ErrorCode::InvalidArgument, "inner interval not nested in outer");
  }
  std::vector<Edge> out;
  for (const auto& [key, runs] : runs_) {
    double w = 0.0;
    if (covers(runs, inner, &w) && !covers(runs, outer, nullptr)) {
      out.push_back(Edge{key.first, key.second, w});
    }
  }
  return EdgeSet::from_sorted_unique(std::move(out));
}

EdgeSet EvolvingGraphStore::delta_label(Interval parent, Interval child) const {
  check_interval(parent);
  check_interval(child);
  const bool shrink_right = child.lo == parent.lo && child.hi == parent.hi - 1;
  const bool shrink_left = child.lo == parent.lo + 1 && child.hi == parent.hi;
  if (!shrink_right && !shrink_left) {
    raise(ErrorCode::NotAdjacent,
          "child interval must shrink the parent by exactly one snapshot");
  }
  return cover_difference(parent, child);
}

std::int64_t EvolvingGraphStore::common_count(Interval iv) const {
  check_interval(iv);
  std::int64_t n = 0;
  for (const auto& [key, runs] : runs_) {
    (void)key;
    if (covers(runs, iv, nullptr)) ++n;
  }
  return n;
}

std::vector<std::int64_t> EvolvingGraphStore::common_counts(Interval window) const {
  check_interval(window);
  const int m = window.length();
  // contrib[a*m + b] counts runs clipped to window coordinates [a, b]; such a
  // run covers every interval [i, j] with a <= i <= j <= b.
  std::vector<std::int64_t> contrib(static_cast<std::size_t>(m) * m, 0);
  for (const auto& [key, runs] : runs_) {
    (void)key;
    for (const Run& r : runs) {
      const int a = std::max(r.start, window.lo) - window.lo;
      const int b = std::min(run_end(r), window.hi) - window.lo;
      if (a <= b) contrib[static_cast<std::size_t>(a) * m + b] += 1;
    }
  }
  // c(i, j) = sum of contrib[a][b] with a <= i and b >= j.
  std::vector<std::int64_t> counts(static_cast<std::size_t>(m) * m, 0);
  for (int a = 0; a < m; ++a) {
    for (int b = m - 2; b >= 0; --b) {
      contrib[static_cast<std::size_t>(a) * m + b] +=
          contrib[static_cast<std::size_t>(a) * m + b + 1];
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      std::int64_t c = contrib[static_cast<std::size_t>(i) * m + j];
      if (i > 0) c += counts[static_cast<std::size_t>(i - 1) * m + j];
      counts[static_cast<std::size_t>(i) * m + j] = c;
    }
  }
  return counts;
}

const DeltaBatch& EvolvingGraphStore::transition(int idx) const {
  if (idx < 0 || idx >= static_cast<int>(transitions_.size())) {
    raise(ErrorCode::UnknownSnapshot,
          "transition " + std::to_string(idx) + " outside [0, " +
              std::to_string(transitions_.size()) + ")");
  }
  return transitions_[static_cast<std::size_t>(idx)];
}

// ---------------------------------------------------------------------------
// Persistence.
//
// Directory layout:
//   meta               "vertex_count <V>" and "snapshots <n>" lines
//   base.el            canonical edge list "src dst weight", sorted
//   batches/NNNN.delta "+ src dst weight" lines then "- src dst" lines
// ---------------------------------------------------------------------------

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out << content;
  if (!out) raise(ErrorCode::Io, "write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string batch_file_name(int idx) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d.delta", idx);
  return buf;
}

// Shared edge-list parser; `require_weight` for store-internal files.
std::pair<EdgeSet, std::uint32_t> parse_edge_list(const std::string& content,
                                                  const std::string& origin) {
  std::vector<Edge> edges;
  std::uint32_t max_id = 0;
  bool any = false;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string::npos) nl = content.size();
    std::string_view line(content.data() + pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const std::string ctx = origin + ":" + std::to_string(line_no);
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0][0] == '#') {
      if (pos > content.size()) break;
      continue;
    }
    if (tokens.size() != 2 && tokens.size() != 3) {
      raise(ErrorCode::Parse, ctx + ": expected 'src dst [weight]'");
    }
    Edge e;
    e.src = parse_u32(tokens[0], ctx);
    e.dst = parse_u32(tokens[1], ctx);
    e.weight = tokens.size() == 3 ? parse_double(tokens[2], ctx) : 1.0;
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      raise(ErrorCode::Parse, ctx + ": weight must be a positive finite number");
    }
    max_id = std::max({max_id, e.src, e.dst});
    any = true;
    edges.push_back(e);
    if (pos > content.size()) break;
  }
  return {EdgeSet::from_edges(std::move(edges)), any ? max_id + 1 : 0};
}

}  // namespace

void EvolvingGraphStore::save(const std::filesystem::path& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir / "batches", ec);
  if (ec) raise(ErrorCode::Io, "cannot create " + (dir / "batches").string());

  std::string meta;
  meta += "vertex_count " + std::to_string(vertex_count_) + "\n";
  meta += "snapshots " + std::to_string(snapshot_count_) + "\n";
  write_file(dir / "meta", meta);

  std::string base;
  for (const Edge& e : base_edges_) {
    base += std::to_string(e.src) + " " + std::to_string(e.dst) + " ";
    append_double(base, e.weight);
    base += "\n";
  }
  write_file(dir / "base.el", base);

  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    std::string body;
    for (const Edge& e : transitions_[i].additions) {
      body += "+ " + std::to_string(e.src) + " " + std::to_string(e.dst) + " ";
      append_double(body, e.weight);
      body += "\n";
    }
    for (const Edge& e : transitions_[i].deletions) {
      body += "- " + std::to_string(e.src) + " " + std::to_string(e.dst) + "\n";
    }
    write_file(dir / "batches" / batch_file_name(static_cast<int>(i)), body);
  }
}

EvolvingGraphStore EvolvingGraphStore::load(const std::filesystem::path& dir) {
  const std::string meta = read_file(dir / "meta");
  std::uint32_t vertex_count = 0;
  int snapshots = 0;
  {
    std::istringstream in(meta);
    std::string key;
    std::string value;
    bool have_v = false;
    bool have_n = false;
    while (in >> key >> value) {
      if (key == "vertex_count") {
        vertex_count = parse_u32(value, (dir / "meta").string());
        have_v = true;
      } else if (key == "snapshots") {
        snapshots = static_cast<int>(parse_i64(value, (dir / "meta").string()));
        have_n = true;
      }
    }
    if (!have_v || !have_n || snapshots < 1) {
      raise(ErrorCode::Parse, (dir / "meta").string() + ": missing or invalid fields");
    }
  }

  auto [base, min_v] = parse_edge_list(read_file(dir / "base.el"), (dir / "base.el").string());
  if (min_v > vertex_count) {
    raise(ErrorCode::Parse, (dir / "base.el").string() + ": vertex id exceeds meta vertex_count");
  }
  EvolvingGraphStore store(std::move(base), vertex_count);

  for (int i = 0; i + 1 < snapshots; ++i) {
    const auto path = dir / "batches" / batch_file_name(i);
    const std::string body = read_file(path);
    std::vector<Edge> adds;
    std::vector<Edge> dels;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos < body.size()) {
      std::size_t nl = body.find('\n', pos);
      if (nl == std::string::npos) nl = body.size();
      std::string_view line(body.data() + pos, nl - pos);
      pos = nl + 1;
      ++line_no;
      const std::string ctx = path.string() + ":" + std::to_string(line_no);
      auto tokens = split_ws(line);
      if (tokens.empty() || tokens[0][0] == '#') continue;
      if (tokens[0] == "+" && tokens.size() == 4) {
        adds.push_back(Edge{parse_u32(tokens[1], ctx), parse_u32(tokens[2], ctx),
                            parse_double(tokens[3], ctx)});
      } else if (tokens[0] == "-" && tokens.size() == 3) {
        dels.push_back(Edge{parse_u32(tokens[1], ctx), parse_u32(tokens[2], ctx), 1.0});
      } else {
        raise(ErrorCode::Parse, ctx + ": expected '+ src dst weight' or '- src dst'");
      }
    }
    store.new_version(DeltaBatch{EdgeSet::from_edges(std::move(adds)),
                                 EdgeSet::from_edges(std::move(dels))});
  }
  return store;
}

EvolvingGraphStore EvolvingGraphStore::ingest_edge_list(const std::filesystem::path& file) {
  auto [edges, vertex_count] = parse_edge_list(read_file(file), file.string());
  return EvolvingGraphStore(std::move(edges), vertex_count);
}

}  // namespace evograph
