#ifndef LEMNI_HOMEO_HPP
#define LEMNI_HOMEO_HPP

#include <algorithm>
#include <numeric>
#include <vector>

#include "lemni/hausdorff.hpp"
#include "lemni/levelset.hpp"
#include "lemni/scene.hpp"

namespace lemni {

// Computable surrogate for ambient homeomorphism type of disjoint Jordan
// curve families: component count, rooted nesting-forest isomorphism (root =
// unbounded face), and Hausdorff proximity of matched components.
struct homeo_report {
  size_t target_components = 0;
  size_t level_components = 0;
  bool count_match = false;
  bool all_closed = false;
  bool forest_isomorphic = false;
  std::vector<int> match;             // level component -> target curve id (-1 unmatched)
  std::vector<double> component_dh;   // per level component (inf when unmatched)
  double dh_overall = inf;

  bool full_match() const { return count_match && all_closed && forest_isomorphic; }
};

namespace detail {

struct forest_matcher {
  const scene* target;
  const level_set* ls;
  double resample_h;
  std::vector<std::vector<int>> target_children;  // curve id -> child curve ids
  std::vector<int> target_roots;
  std::vector<std::vector<int>> level_children;   // comp -> child comps
  std::vector<int> level_roots;
  std::vector<std::vector<cplx>> target_pts, level_pts;

  // recursive isomorphism: match the two sibling lists, smallest total
  // Hausdorff distance among structure-feasible pairings
  bool match_siblings(const std::vector<int>& tc, const std::vector<int>& lc,
                      std::vector<int>& match_out, double& cost_out) {
    if (tc.size() != lc.size()) return false;
    size_t k = tc.size();
    std::vector<size_t> perm(k);
    std::iota(perm.begin(), perm.end(), size_t(0));
    bool found = false;
    double best_cost = inf;
    std::vector<int> best_match(match_out);
    do {
      double cost = 0;
      std::vector<int> trial(match_out);
      bool ok = true;
      for (size_t i = 0; i < k && ok; ++i) {
        int tcur = tc[i];
        int lcur = lc[perm[i]];
        double pair_cost;
        std::vector<int> sub(trial);
        if (!match_siblings(target_children[size_t(tcur)], level_children[size_t(lcur)], sub,
                            pair_cost)) {
          ok = false;
          break;
        }
        sub[size_t(lcur)] = tcur;
        cost += pair_cost + hausdorff_points(target_pts[size_t(tcur)], level_pts[size_t(lcur)]);
        trial = std::move(sub);
      }
      if (ok && cost < best_cost) {
        best_cost = cost;
        best_match = trial;
        found = true;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (found) {
      match_out = best_match;
      cost_out = best_cost;
    }
    return found;
  }
};

}  // namespace detail

inline homeo_report homeo_type_check(const scene& target, const level_set& ls,
                                     double resample_h = 0.0) {
  if (resample_h <= 0) resample_h = 0.005 * target.scale;
  homeo_report rep;
  rep.target_components = target.curves.size();
  rep.level_components = ls.comps.size();
  rep.count_match = rep.target_components == rep.level_components;
  rep.all_closed = ls.all_closed();
  rep.match.assign(ls.comps.size(), -1);
  rep.component_dh.assign(ls.comps.size(), inf);
  if (ls.comps.empty()) return rep;

  detail::forest_matcher fm;
  fm.target = &target;
  fm.ls = &ls;
  fm.resample_h = resample_h;
  size_t nt = target.curves.size(), nl = ls.comps.size();
  fm.target_children.assign(nt, {});
  fm.level_children.assign(nl, {});
  for (size_t i = 0; i < nt; ++i) {
    if (target.curve_parent[i] < 0)
      fm.target_roots.push_back(int(i));
    else
      fm.target_children[size_t(target.curve_parent[i])].push_back(int(i));
  }
  for (size_t i = 0; i < nl; ++i) {
    if (ls.parent[i] < 0)
      fm.level_roots.push_back(int(i));
    else
      fm.level_children[size_t(ls.parent[i])].push_back(int(i));
  }
  fm.target_pts.resize(nt);
  for (size_t i = 0; i < nt; ++i)
    fm.target_pts[i] = resample_polyline(target.curves[i].dense_polyline(512), true, resample_h);
  fm.level_pts.resize(nl);
  for (size_t i = 0; i < nl; ++i)
    fm.level_pts[i] = resample_polyline(ls.comps[i].pts, ls.comps[i].closed, resample_h);

  if (rep.count_match && rep.all_closed) {
    std::vector<int> match(nl, -1);
    double cost = 0;
    rep.forest_isomorphic = fm.match_siblings(fm.target_roots, fm.level_roots, match, cost);
    if (rep.forest_isomorphic) {
      rep.match = match;
      for (size_t i = 0; i < nl; ++i) {
        if (rep.match[i] >= 0)
          rep.component_dh[i] =
              hausdorff_points(fm.target_pts[size_t(rep.match[i])], fm.level_pts[i]);
      }
    }
  }

  // overall distance between the unions, regardless of matching
  std::vector<cplx> all_t, all_l;
  for (const auto& v : fm.target_pts) all_t.insert(all_t.end(), v.begin(), v.end());
  for (const auto& v : fm.level_pts) all_l.insert(all_l.end(), v.begin(), v.end());
  if (!all_t.empty() && !all_l.empty()) rep.dh_overall = hausdorff_points(all_t, all_l);
  return rep;
}

}  // namespace lemni

#endif
