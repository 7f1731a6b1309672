// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#include "core/trigrid.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

#include "core/errors.hpp"
#include "core/text_io.hpp"

namespace evograph {

// ---------------------------------------------------------------------------
// TriangularGrid
// ---------------------------------------------------------------------------

TriangularGrid TriangularGrid::build(const EvolvingGraphStore& store, Interval window) {
  store.check_interval(window);
  const int m = window.length();
  const auto counts = store.common_counts(window);
  std::vector<std::int64_t> wl(static_cast<std::size_t>(m) * m, 0);
  std::vector<std::int64_t> wr(static_cast<std::size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const std::int64_t c = counts[static_cast<std::size_t>(i) * m + j];
      wl[static_cast<std::size_t>(i) * m + j] =
          counts[static_cast<std::size_t>(i) * m + (j - 1)] - c;
      wr[static_cast<std::size_t>(i) * m + j] =
          counts[static_cast<std::size_t>(i + 1) * m + j] - c;
    }
  }
  return from_weights(window, std::move(wl), std::move(wr));
}

TriangularGrid TriangularGrid::from_weights(Interval window,
                                            std::vector<std::int64_t> weight_left,
                                            std::vector<std::int64_t> weight_right) {
  const int m = window.length();
  if (m < 1 || weight_left.size() != static_cast<std::size_t>(m) * m ||
      weight_right.size() != static_cast<std::size_t>(m) * m) {
    raise(ErrorCode::InvalidArgument, "malformed triangular grid weights");
  }
  TriangularGrid tg;
  tg.window_ = window;
  tg.m_ = m;
  tg.weight_left_ = std::move(weight_left);
  tg.weight_right_ = std::move(weight_right);
  return tg;
}

std::size_t TriangularGrid::index(Interval node) const {
  const int i = node.lo - window_.lo;
  const int j = node.hi - window_.lo;
  if (i < 0 || j >= m_ || i > j) {
    raise(ErrorCode::InvalidArgument, "interval outside triangular grid");
  }
  return static_cast<std::size_t>(i) * m_ + j;
}

std::int64_t TriangularGrid::weight_left(Interval node) const {
  if (node.length() < 2) raise(ErrorCode::InvalidArgument, "leaf node has no out-edges");
  return weight_left_[index(node)];
}

std::int64_t TriangularGrid::weight_right(Interval node) const {
  if (node.length() < 2) raise(ErrorCode::InvalidArgument, "leaf node has no out-edges");
  return weight_right_[index(node)];
}

// ---------------------------------------------------------------------------
// Minimum-cost schedule: dynamic program over (interval, leaf range) states.
//
// f(i, j, a, b) = minimum cost of a subtree rooted at grid node [i, j] whose
// leaves are exactly the snapshots a..b (window-relative, i <= a <= b <= j):
//   leaf:          f(t, t, t, t) = 0
//   descend left:  wL(i,j) + f(i, j-1, a, b)        when b <= j-1
//   descend right: wR(i,j) + f(i+1, j, a, b)        when a >= i+1
//   branch:        wL(i,j) + f(i, j-1, a, s)
//                + wR(i,j) + f(i+1, j, s+1, b)      for s in [a, b-1]
// Any tree can be rearranged so every subtree covers a contiguous leaf range
// without increasing cost, so the answer is f(0, m-1, 0, m-1).
// ---------------------------------------------------------------------------

namespace {

enum class Choice : std::int8_t { Leaf, DescendLeft, DescendRight, Branch };

struct DpTables {
  int m = 0;
  // Per interval pair (i, j): offset into the flat state arrays.
  std::vector<std::size_t> pair_offset;
  std::vector<std::int64_t> cost;
  std::vector<Choice> choice;
  std::vector<std::int16_t> split;

  std::size_t pair_index(int i, int j) const {
    return static_cast<std::size_t>(i) * m + j;
  }
  // Local index of leaf range (a, b) inside pair (i, j).
  std::size_t state(int i, int j, int a, int b) const {
    const int length = j - i + 1;
    const int ar = a - i;
    const int br = b - i;
    const std::size_t local = static_cast<std::size_t>(ar) * length -
                              static_cast<std::size_t>(ar) * (ar - 1) / 2 +
                              static_cast<std::size_t>(br - ar);
    return pair_offset[pair_index(i, j)] + local;
  }
};

DpTables run_dp(const TriangularGrid& tg) {
  const int m = tg.length();
  const int lo = tg.window().lo;
  DpTables dp;
  dp.m = m;
  dp.pair_offset.assign(static_cast<std::size_t>(m) * m, 0);
  std::size_t total = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      dp.pair_offset[dp.pair_index(i, j)] = total;
      const int length = j - i + 1;
      total += static_cast<std::size_t>(length) * (length + 1) / 2;
    }
  }
  dp.cost.assign(total, std::numeric_limits<std::int64_t>::max());
  dp.choice.assign(total, Choice::Leaf);
  dp.split.assign(total, -1);

  for (int length = 1; length <= m; ++length) {
    for (int i = 0; i + length - 1 < m; ++i) {
      const int j = i + length - 1;
      if (length == 1) {
        dp.cost[dp.state(i, j, i, j)] = 0;
        continue;
      }
      const Interval node{lo + i, lo + j};
      const std::int64_t wl = tg.weight_left(node);
      const std::int64_t wr = tg.weight_right(node);
      for (int a = i; a <= j; ++a) {
        for (int b = a; b <= j; ++b) {
          const std::size_t s = dp.state(i, j, a, b);
          std::int64_t best = std::numeric_limits<std::int64_t>::max();
          Choice best_choice = Choice::Leaf;
          int best_split = -1;
          if (b <= j - 1) {
            const std::int64_t c = wl + dp.cost[dp.state(i, j - 1, a, b)];
            if (c < best) {
              best = c;
              best_choice = Choice::DescendLeft;
            }
          }
          if (a >= i + 1) {
            const std::int64_t c = wr + dp.cost[dp.state(i + 1, j, a, b)];
            if (c < best) {
              best = c;
              best_choice = Choice::DescendRight;
            }
          }
          for (int split = a; split < b; ++split) {
            const std::int64_t c = wl + dp.cost[dp.state(i, j - 1, a, split)] +
                                   wr + dp.cost[dp.state(i + 1, j, split + 1, b)];
            if (c < best) {
              best = c;
              best_choice = Choice::Branch;
              best_split = split;
            }
          }
          dp.cost[s] = best;
          dp.choice[s] = best_choice;
          dp.split[s] = static_cast<std::int16_t>(best_split);
        }
      }
    }
  }
  return dp;
}

ScheduleNode rebuild(const TriangularGrid& tg, const DpTables& dp, int i, int j,
                     int a, int b) {
  const int lo = tg.window().lo;
  ScheduleNode node;
  node.interval = Interval{lo + i, lo + j};
  if (i == j) return node;
  const std::size_t s = dp.state(i, j, a, b);
  const std::int64_t wl = tg.weight_left(node.interval);
  const std::int64_t wr = tg.weight_right(node.interval);
  switch (dp.choice[s]) {
    case Choice::DescendLeft: {
      ScheduleNode child = rebuild(tg, dp, i, j - 1, a, b);
      child.batch_size = wl;
      node.children.push_back(std::move(child));
      break;
    }
    case Choice::DescendRight: {
      ScheduleNode child = rebuild(tg, dp, i + 1, j, a, b);
      child.batch_size = wr;
      node.children.push_back(std::move(child));
      break;
    }
    case Choice::Branch: {
      const int split = dp.split[s];
      ScheduleNode left = rebuild(tg, dp, i, j - 1, a, split);
      left.batch_size = wl;
      ScheduleNode right = rebuild(tg, dp, i + 1, j, split + 1, b);
      right.batch_size = wr;
      node.children.push_back(std::move(left));
      node.children.push_back(std::move(right));
      break;
    }
    case Choice::Leaf:
      raise(ErrorCode::InvalidArgument, "inconsistent schedule state");
  }
  return node;
}

}  // namespace

EvaluationSchedule solve_steiner(const TriangularGrid& tg) {
  const int m = tg.length();
  const DpTables dp = run_dp(tg);
  EvaluationSchedule schedule;
  schedule.kind = ScheduleKind::WorkSharing;
  schedule.window = tg.window();
  schedule.root = rebuild(tg, dp, 0, m - 1, 0, m - 1);
  schedule.total_cost = dp.cost[dp.state(0, m - 1, 0, m - 1)];
  return schedule;
}

// ---------------------------------------------------------------------------
// Bypass merging and batch materialization
// ---------------------------------------------------------------------------

namespace {

void contract_chains(ScheduleNode& node) {
  for (auto& child : node.children) {
    while (child.children.size() == 1) {
      ScheduleNode grandchild = std::move(child.children.front());
      grandchild.batch_size += child.batch_size;
      if (child.batch.has_value() && grandchild.batch.has_value()) {
        grandchild.batch = child.batch->unite(*grandchild.batch);
      } else {
        grandchild.batch.reset();
      }
      child = std::move(grandchild);
    }
    contract_chains(child);
  }
}

void materialize_node(const EvolvingGraphStore& store, ScheduleNode& node,
                      const Interval* parent) {
  if (parent == nullptr) {
    node.batch.reset();  // root carries no incoming batch
  } else {
    EdgeSet batch = store.cover_difference(*parent, node.interval);
    if (static_cast<std::int64_t>(batch.size()) != node.batch_size) {
      raise(ErrorCode::InvalidArgument,
            "schedule batch size disagrees with store contents");
    }
    node.batch = std::move(batch);
  }
  for (auto& child : node.children) {
    materialize_node(store, child, &node.interval);
  }
}

std::int64_t sum_batch_sizes(const ScheduleNode& node) {
  std::int64_t total = node.batch_size;
  for (const auto& child : node.children) total += sum_batch_sizes(child);
  return total;
}

}  // namespace

EvaluationSchedule bypass_merge(EvaluationSchedule schedule) {
  contract_chains(schedule.root);
  return schedule;
}

EvaluationSchedule direct_hop_schedule(const EvolvingGraphStore& store, Interval window) {
  store.check_interval(window);
  const int m = window.length();
  EvaluationSchedule schedule;
  schedule.kind = ScheduleKind::DirectHop;
  schedule.window = window;
  schedule.root.interval = window;
  if (m > 1) {
    const auto counts = store.common_counts(window);
    const std::int64_t common = counts[static_cast<std::size_t>(0) * m + (m - 1)];
    for (int t = 0; t < m; ++t) {
      ScheduleNode leaf;
      leaf.interval = Interval{window.lo + t, window.lo + t};
      leaf.batch_size = counts[static_cast<std::size_t>(t) * m + t] - common;
      schedule.total_cost += leaf.batch_size;
      schedule.root.children.push_back(std::move(leaf));
    }
  }
  return schedule;
}

EvaluationSchedule materialize_batches(const EvolvingGraphStore& store,
                                       EvaluationSchedule schedule) {
  materialize_node(store, schedule.root, nullptr);
  if (sum_batch_sizes(schedule.root) != schedule.total_cost) {
    raise(ErrorCode::InvalidArgument, "schedule cost disagrees with batch sizes");
  }
  schedule.materialized = true;
  return schedule;
}

// ---------------------------------------------------------------------------
// Text export / import
// ---------------------------------------------------------------------------

const char* schedule_kind_name(ScheduleKind kind) {
  return kind == ScheduleKind::DirectHop ? "direct-hop" : "work-sharing";
}

namespace {

void export_node(const ScheduleNode& node, int parent, bool include_edges,
                 int& next_index, std::string& out) {
  const int index = next_index++;
  out += "node " + std::to_string(index) + " interval " +
         std::to_string(node.interval.lo) + ":" + std::to_string(node.interval.hi) +
         " parent " + std::to_string(parent) + " batch_size " +
         std::to_string(node.batch_size) + "\n";
  if (include_edges && node.batch.has_value()) {
    for (const Edge& e : *node.batch) {
      out += "edge " + std::to_string(e.src) + " " + std::to_string(e.dst) + " ";
      append_double(out, e.weight);
      out += "\n";
    }
  }
  for (const auto& child : node.children) {
    export_node(child, index, include_edges, next_index, out);
  }
}

int count_nodes(const ScheduleNode& node) {
  int n = 1;
  for (const auto& child : node.children) n += count_nodes(child);
  return n;
}

Interval parse_interval_token(std::string_view token, const std::string& ctx) {
  const auto colon = token.find(':');
  if (colon == std::string_view::npos) {
    raise(ErrorCode::Parse, ctx + ": expected LO:HI");
  }
  Interval iv;
  iv.lo = static_cast<int>(parse_i64(token.substr(0, colon), ctx));
  iv.hi = static_cast<int>(parse_i64(token.substr(colon + 1), ctx));
  return iv;
}

}  // namespace

std::string schedule_to_text(const EvaluationSchedule& schedule, bool include_edges) {
  std::string out;
  out += "evograph-schedule v1\n";
  out += std::string("mode ") + schedule_kind_name(schedule.kind) + "\n";
  out += "window " + std::to_string(schedule.window.lo) + ":" +
         std::to_string(schedule.window.hi) + "\n";
  out += "cost " + std::to_string(schedule.total_cost) + "\n";
  out += "nodes " + std::to_string(count_nodes(schedule.root)) + "\n";
  int next_index = 0;
  export_node(schedule.root, -1, include_edges, next_index, out);
  return out;
}

ParsedSchedule schedule_from_text(const std::string& text) {
  ParsedSchedule parsed;
  std::size_t pos = 0;
  int line_no = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line(text.data() + pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const std::string ctx = "schedule:" + std::to_string(line_no);
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (line != "evograph-schedule v1") {
        raise(ErrorCode::Parse, ctx + ": unknown schedule format");
      }
      saw_header = true;
      continue;
    }
    std::vector<std::string_view> tokens;
    {
      std::string_view view(line);
      std::size_t i = 0;
      while (i < view.size()) {
        while (i < view.size() && (view[i] == ' ' || view[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < view.size() && view[j] != ' ' && view[j] != '\r') ++j;
        if (j > i) tokens.push_back(view.substr(i, j - i));
        i = j;
      }
    }
    if (tokens.empty()) continue;
    if (tokens[0] == "mode" && tokens.size() == 2) {
      parsed.mode = std::string(tokens[1]);
    } else if (tokens[0] == "window" && tokens.size() == 2) {
      parsed.window = parse_interval_token(tokens[1], ctx);
    } else if (tokens[0] == "cost" && tokens.size() == 2) {
      parsed.cost = parse_i64(tokens[1], ctx);
    } else if (tokens[0] == "nodes" && tokens.size() == 2) {
      // size hint only
    } else if (tokens[0] == "node" && tokens.size() == 8) {
      ParsedScheduleNode node;
      node.interval = parse_interval_token(tokens[3], ctx);
      node.parent = static_cast<int>(parse_i64(tokens[5], ctx));
      node.batch_size = parse_i64(tokens[7], ctx);
      parsed.nodes.push_back(std::move(node));
    } else if (tokens[0] == "edge" && tokens.size() == 4) {
      if (parsed.nodes.empty()) raise(ErrorCode::Parse, ctx + ": edge before any node");
      parsed.nodes.back().edges.push_back(Edge{parse_u32(tokens[1], ctx),
                                               parse_u32(tokens[2], ctx),
                                               parse_double(tokens[3], ctx)});
    } else {
      raise(ErrorCode::Parse, ctx + ": unrecognized line '" + line + "'");
    }
  }
  if (!saw_header) raise(ErrorCode::Parse, "schedule: empty document");
  return parsed;
}

}  // namespace evograph
