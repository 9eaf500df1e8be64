#include "fusionopt/cli/commands.hpp"

#include "fusionopt/discrete.hpp"
#include "fusionopt/duality.hpp"
#include "fusionopt/fusion.hpp"
#include "fusionopt/optimality.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace fusionopt::cli {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Report matrix_json(const Matrix& a) {
  auto rows = Report::array();
  for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(a.row(r).raw());
  return rows;
}

Report one_based(const std::vector<std::size_t>& idx) {
  auto out = Report::array();
  for (std::size_t i : idx) out.push_back(i + 1);
  return out;
}

Report header(const char* command, const LoadedDocument& in, const Tolerance& tol) {
  Report r;
  r["command"] = command;
  r["source"] = in.source;
  r["input_digest"] = "fnv1a64:" + fnv1a64_hex(in.raw);
  r["tolerance"] = {{"rank_eps", tol.rank_eps}, {"residual_eps", tol.residual_eps}};
  r["indexing"] = "1-based";
  return r;
}

Report listing(const DiscreteFrame& f) {
  auto out = Report::array();
  for (std::size_t k = 0; k < f.size(); ++k) {
    Report item;
    item["index"] = k + 1;
    if (f.labels()) {
      const auto& l = (*f.labels())[k];
      item["label"] = {l.member + 1, l.basis_index + 1};
    }
    item["vector"] = f[k].raw();
    out.push_back(std::move(item));
  }
  return out;
}

Report subspace_json(const Subspace& s) {
  auto vecs = Report::array();
  for (const auto& v : s.basis_vectors()) vecs.push_back(v.raw());
  return {{"dim", s.dim()}, {"basis", std::move(vecs)}};
}

Report erasure_json(const ErasureReport& rep) {
  Report out;
  out["r"] = rep.r;
  out["norm"] = std::string(to_string(rep.norm_kind));
  out["worst_value"] = rep.worst_value;
  auto argmax = Report::array();
  for (const auto& s : rep.argmax_subsets) argmax.push_back(one_based(s));
  out["argmax"] = std::move(argmax);
  auto table = Report::array();
  for (const auto& row : rep.per_subset_values) table.push_back({{"subset", one_based(row.subset)}, {"value", row.value}});
  out["table"] = std::move(table);
  return out;
}

Report certificate_json(const Certificate& c) {
  Report out;
  out["kind"] = std::string(to_string(c.kind));
  out["verdict"] = std::string(to_string(c.verdict));
  out["norm"] = "frobenius";
  out["c_value"] = c.c_value;
  out["member_values"] = c.member_values;
  out["lambda1"] = one_based(c.lambda1);
  out["lambda2"] = one_based(c.lambda2);
  out["h1_dim"] = c.h1_dim;
  out["h2_dim"] = c.h2_dim;
  out["intersection_dim"] = c.intersection_dim;
  out["riesz_side"] = std::string(to_string(c.riesz_side));
  out["lambda_side_riesz"] = c.lambda_side_riesz;
  out["is_nontrivial"] = c.is_nontrivial;
  if (c.tight_bound) out["tight_bound"] = *c.tight_bound;
  if (c.d1_bound) out["d1_bound"] = *c.d1_bound;
  out["notes"] = c.notes;
  return out;
}

std::string classification_summary(const FrameClassification& c) {
  if (!c.is_frame) return "not a fusion frame (subspaces do not span)";
  if (c.is_orthonormal_fusion_basis) return "orthonormal fusion basis";
  std::string s = c.is_riesz_fusion_basis ? "Riesz fusion basis" : "fusion frame, not Riesz";
  if (c.is_parseval) {
    s += ", Parseval";
  } else if (c.is_tight) {
    s += ", tight";
  }
  return s + ", bounds (" + num(c.lower_bound) + ", " + num(c.upper_bound) + ")";
}

DualPair pair_from(const LoadedDocument& in, const FusionFrame& w, const Tolerance& tol, Report& r) {
  if (in.doc.dual) {
    r["dual_source"] = "document";
    return DualPair(w, build_dual(in.doc, tol), tol);
  }
  r["dual_source"] = "canonical";
  return DualPair::canonical(w, tol);
}

std::vector<std::size_t> zero_based(const std::vector<std::size_t>& fixed, std::size_t m) {
  std::vector<std::size_t> out;
  for (std::size_t k : fixed) {
    if (k == 0 || k > m) {
      throw IndexError("--fixed index " + std::to_string(k) + " outside 1.." + std::to_string(m));
    }
    out.push_back(k - 1);
  }
  return out;
}

}  // namespace

Report cmd_classify(const LoadedDocument& in, const Tolerance& tol) {
  Report r = header("classify", in, tol);
  const FusionFrame w = build_frame(in.doc, tol);
  const FrameClassification c = classify(w, tol);
  r["summary"] = classification_summary(c);
  r["classification"] = {{"is_frame", c.is_frame},
                         {"lower_bound", c.lower_bound},
                         {"upper_bound", c.upper_bound},
                         {"is_tight", c.is_tight},
                         {"is_parseval", c.is_parseval},
                         {"is_riesz_fusion_basis", c.is_riesz_fusion_basis},
                         {"is_orthonormal_fusion_basis", c.is_orthonormal_fusion_basis},
                         {"is_nontrivial", c.is_nontrivial}};
  auto members = Report::array();
  for (std::size_t i = 0; i < w.size(); ++i)
    members.push_back({{"index", i + 1}, {"weight", w.weight(i)}, {"dim", w.subspace(i).dim()}});
  r["members"] = std::move(members);
  const Matrix s = frame_operator(w);
  r["frame_operator"] = matrix_json(s);
  if (c.is_frame) r["frame_operator_inverse"] = matrix_json(spd_inverse(s, tol));
  if (!c.is_nontrivial) r["warning"] = "every member is the whole space";
  r["document"] = document_echo(w, nullptr, in.doc.basis);
  return r;
}

Report cmd_verify_dual(const LoadedDocument& in, const Tolerance& tol) {
  Report r = header("verify-dual", in, tol);
  const FusionFrame w = build_frame(in.doc, tol);
  const FusionFrame v = build_dual(in.doc, tol);
  const DualPair pair(w, v, tol);
  const DualCheck check = verify_dual(pair, tol);
  r["verdict"] = check.is_dual ? "dual" : "not a dual";
  r["dual_check"] = {{"is_dual", check.is_dual},
                     {"residual", check.residual},
                     {"residual_norm", "frobenius"},
                     {"candidate_is_frame", check.candidate_is_frame},
                     {"reconstruction", matrix_json(check.reconstruction)},
                     {"defect", matrix_json(check.reconstruction - Matrix::identity(w.ambient_dim()))}};
  if (!check.candidate_is_frame) r["warning"] = "the candidate family does not span the space";
  r["document"] = document_echo(w, &v, in.doc.basis);
  return r;
}

Report cmd_erasure(const LoadedDocument& in, const ErasureRequest& req, const Tolerance& tol) {
  Report r = header("erasure", in, tol);
  const FusionFrame w = build_frame(in.doc, tol);
  if (!req.r && req.fixed.empty()) throw InputError("either --r or --fixed is required", "--r");

  if (!req.bridge) {
    r["setting"] = "fusion";
    const DualPair pair = pair_from(in, w, tol, r);
    if (pair.duality_residual() > tol.residual_eps) {
      r["warning"] = "the pair is not a dual (residual " + num(pair.duality_residual()) + ")";
    }
    if (!req.fixed.empty()) {
      const ErasureMask mask(pair.size(), zero_based(req.fixed, pair.size()));
      r["mode"] = "fixed";
      r["erasure"] = {{"subset", one_based(mask.erased())},
                      {"norm", std::string(to_string(req.norm))},
                      {"value", partial_erasure_error(pair, mask, req.norm, tol)}};
    } else {
      r["mode"] = "worst";
      r["erasure"] = erasure_json(worst_case_error(pair, *req.r, req.norm, tol, true));
    }
    r["document"] = document_echo(w, in.doc.dual ? &pair.dual_candidate() : nullptr, in.doc.basis);
    return r;
  }

  r["setting"] = "bridged";
  const auto basis = basis_or_standard(in.doc);
  const DiscreteFrame full = bridge_fusion_to_discrete(w, basis, BridgeMode::canonical_weighted, tol);
  const DiscreteFrame f = full.compacted(tol.rank_eps);
  const DiscreteFrame g = discrete_canonical_dual(f, tol);
  r["frame"] = listing(f);
  r["dropped_zero_vectors"] = full.size() - f.size();
  if (!req.fixed.empty()) {
    const auto erased = zero_based(req.fixed, f.size());
    const ErasureMask mask(f.size(), erased);
    const double canonical = partial_erasure_error(f, g, mask, req.norm, tol);
    const HalvingResult half = halving_dual(f, erased, tol);
    Report e;
    e["subset"] = one_based(mask.erased());
    e["norm"] = std::string(to_string(req.norm));
    e["canonical_value"] = canonical;
    e["halving_feasible"] = half.feasible;
    e["halving_constraint_residual"] = half.constraint_residual;
    if (half.dual) {
      const double halved = partial_erasure_error(f, *half.dual, mask, req.norm, tol);
      e["halving_value"] = halved;
      e["halving_dual_residual"] = verify_discrete_dual(f, *half.dual, tol).residual;
      if (halved > 0.0) e["ratio"] = canonical / halved;
      e["canonical_partial_optimal_refuted"] = halved < canonical * (1.0 - 1e-12);
      e["halving_dual"] = listing(*half.dual);
    }
    r["mode"] = "fixed";
    r["erasure"] = std::move(e);
  } else {
    r["mode"] = "worst";
    r["erasure"] = erasure_json(discrete_worst_case(f, g, *req.r, req.norm, tol, true));
  }
  r["document"] = document_echo(w, nullptr, in.doc.basis);
  return r;
}

Report cmd_certify(const LoadedDocument& in, const CertifyRequest& req, const Tolerance& tol) {
  Report r = header("certify", in, tol);
  const FusionFrame w = build_frame(in.doc, tol);
  Certificate cert;
  std::optional<FusionFrame> v;
  switch (req.which) {
    case CertifyWhich::canonical:
      cert = certify_canonical_optimal(w, tol);
      break;
    case CertifyWhich::dual: {
      v = build_dual(in.doc, tol);
      cert = certify_dual_optimal(DualPair(w, *v, tol), tol);
      break;
    }
    case CertifyWhich::tight:
      if (in.doc.dual) {
        v = build_dual(in.doc, tol);
        r["dual_source"] = "document";
      } else {
        r["dual_source"] = "canonical";
      }
      cert = certify_tight_uniform(w, v ? *v : canonical_dual(w, tol), tol);
      break;
  }
  r["certificate"] = certificate_json(cert);
  if (req.probes > 0 && req.which == CertifyWhich::canonical) {
    const Refutation ref = refute_by_probes(w, req.probes, req.seed, 1, NormKind::frobenius, tol);
    Report p;
    p["probes_requested"] = req.probes;
    p["probes_evaluated"] = ref.probes_evaluated;
    p["seed"] = req.seed;
    p["norm"] = "frobenius";
    p["canonical_value"] = ref.canonical_value;
    p["best_value"] = ref.best_value;
    p["outcome"] = ref.refuted ? "refuted" : "inconclusive";
    if (ref.witness) {
      p["witness_kind"] = std::string(to_string(ref.witness->kind));
      p["witness"] = document_echo(w, &ref.witness->dual, std::nullopt)["dual"];
    }
    r["refutation"] = std::move(p);
  }
  r["document"] = document_echo(w, v ? &*v : nullptr, in.doc.basis);
  return r;
}

Report cmd_construct(const LoadedDocument& in, const ConstructRequest& req, const Tolerance& tol) {
  Report r = header("construct", in, tol);
  const FusionFrame w = build_frame(in.doc, tol);

  switch (req.what) {
    case ConstructWhat::parseval_family: {
      r["construction"] = "parseval-family";
      std::vector<Subspace> ext;
      if (in.doc.dual) {
        r["extensions_source"] = "document";
        ext = build_dual(in.doc, tol).subspaces();
      } else {
        r["extensions_source"] = "canonical";
        const Matrix root = spd_inv_sqrt(frame_operator(w), tol);
        for (const auto& s : w.subspaces()) ext.push_back(image_subspace(root, s, tol));
      }
      const ParsevalFamily fam = parseval_optimal_family(w, ext, tol, in.doc.basis);
      auto basis = Report::array();
      for (const auto& e : fam.basis) basis.push_back(e.raw());
      r["basis"] = std::move(basis);
      r["parseval_residual"] = fam.parseval_residual;
      r["frame"] = listing(fam.frame.compacted(tol.rank_eps));
      auto duals = Report::array();
      const char* names[] = {"F", "G"};
      for (std::size_t k = 0; k < fam.duals.size(); ++k) {
        // The compacted view keeps the positions of F's nonzero vectors.
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j < fam.frame.size(); ++j)
          if (fam.frame[j].norm() > tol.rank_eps) keep.push_back(j);
        duals.push_back({{"name", names[k]},
                         {"residual", fam.dual_residuals[k]},
                         {"is_dual", fam.dual_residuals[k] <= tol.residual_eps},
                         {"d1", fam.d1_operator[k]},
                         {"norm", "operator"},
                         {"vectors", listing(fam.duals[k].select(keep))}});
      }
      r["duals"] = std::move(duals);
      break;
    }
    case ConstructWhat::expand: {
      r["construction"] = "expand";
      if (!req.index) throw InputError("--index is required for expand", "--index");
      const DualPair pair = pair_from(in, w, tol, r);
      if (*req.index == 0 || *req.index > pair.size()) {
        throw IndexError("--index " + std::to_string(*req.index) + " outside 1.." + std::to_string(pair.size()));
      }
      const std::size_t i = *req.index - 1;
      r["index"] = *req.index;
      const std::size_t m = pair.size();
      if (m >= 2) r["input_d1"] = worst_case_error(pair, 1, NormKind::frobenius, tol).worst_value;
      auto variants = Report::array();
      for (const auto& fv : expand_optimal_family(pair, i, tol)) {
        Report item;
        item["kind"] = std::string(to_string(fv.kind));
        item["member"] = fv.member + 1;
        if (fv.direction) item["direction"] = fv.direction->raw();
        item["subspace"] = subspace_json(fv.family.subspace(i));
        item["is_dual"] = fv.is_dual;
        item["residual"] = fv.duality_residual;
        item["values_preserved"] = fv.values_preserved;
        item["max_value_deviation"] = fv.max_value_deviation;
        if (m >= 2) {
          item["d1"] = worst_case_error(DualPair(w, fv.family, tol), 1, NormKind::frobenius, tol).worst_value;
          item["norm"] = "frobenius";
        }
        variants.push_back(std::move(item));
      }
      r["variants"] = std::move(variants);
      break;
    }
    case ConstructWhat::bridge: {
      r["construction"] = "bridge";
      const auto basis = basis_or_standard(in.doc);
      const DiscreteFrame full = bridge_fusion_to_discrete(w, basis, BridgeMode::canonical_weighted, tol);
      const DiscreteFrame f = full.compacted(tol.rank_eps);
      const DiscreteFrame g = discrete_canonical_dual(f, tol);
      r["frame"] = listing(f);
      r["dropped_zero_vectors"] = full.size() - f.size();
      r["canonical_dual"] = listing(g);
      // {π_{S_W⁻¹W_i} e_j}: the bridged canonical fusion dual, on F's nonzero positions.
      const DiscreteFrame fused = bridge_dual_to_discrete(canonical_dual(w, tol), basis, tol);
      std::vector<std::size_t> keep;
      for (std::size_t k = 0; k < full.size(); ++k)
        if (full[k].norm() > tol.rank_eps) keep.push_back(k);
      const DiscreteFrame fused_kept = fused.select(keep);
      r["bridged_fusion_dual"] = {{"vectors", listing(fused_kept)},
                                  {"residual", verify_discrete_dual(f, fused_kept, tol).residual}};
      if (f.size() >= 2) {
        r["canonical_d1"] = {
            {"frobenius", erasure_json(discrete_worst_case(f, g, 1, NormKind::frobenius, tol))},
            {"operator", erasure_json(discrete_worst_case(f, g, 1, NormKind::operator_norm, tol))}};
      }
      break;
    }
  }
  r["document"] = document_echo(w, nullptr, in.doc.basis);
  return r;
}

}  // namespace fusionopt::cli
