#include "flatfront/deform.hpp"

#include <algorithm>
#include <cmath>

namespace flatfront {

namespace {

// Signature-aware Gram-Schmidt completion of {P+, P-} to a pseudo-orthonormal
// basis of R42 ordered (timelike, spacelike, timelike, spacelike x3) to match
// the (p, q, y0, y1..y3) metric pattern.
struct SplitBasis {
  SigVec t1, s1;          // the R11-like pair from span{P+, P-}
  SigVec n0, n1, n2, n3;  // completion of the orthogonal complement
};

SplitBasis split_conserved_plane(const SigVec& pp, const SigVec& pm) {
  const double pairing = inner(pp, pm);
  if (std::abs(pairing) < 1e-14)
    fail(Errc::DegenerateParameter, "base rotation: conserved pairing vanishes");

  SigVec u1 = pp + pm;
  SigVec u2 = pp - pm;  // |u1|^2 = 2 pairing, |u2|^2 = -2 pairing
  const double s = std::sqrt(2.0 * std::abs(pairing));
  u1 *= 1.0 / s;
  u2 *= 1.0 / s;

  SplitBasis out;
  if (pairing < 0.0) {
    out.t1 = u1;  // timelike
    out.s1 = u2;
  } else {
    out.t1 = u2;
    out.s1 = u1;
  }

  // Orthogonal complement: project the standard basis off span{P+,P-} and
  // Gram-Schmidt with the indefinite metric, keeping one timelike direction.
  std::vector<SigVec> accepted;
  std::vector<double> signs;
  auto project_off_plane = [&](SigVec x) {
    x -= (inner(x, pm) / pairing) * pp;
    x -= (inner(x, pp) / pairing) * pm;
    return x;
  };
  // Two passes: first accept spacelike candidates, then timelike, so the
  // count of each causal type is forced to (1 timelike, 3 spacelike).
  for (int want_timelike = 0; want_timelike <= 1; ++want_timelike) {
    for (int k = 0; k < 6 && static_cast<int>(accepted.size()) < 4; ++k) {
      SigVec cand = project_off_plane(k == 0   ? basis::p()
                                      : k == 1 ? basis::q()
                                               : basis::y(k - 2));
      for (size_t a = 0; a < accepted.size(); ++a)
        cand -= (inner(cand, accepted[a]) / signs[a]) * accepted[a];
      const double n2v = inner(cand, cand);
      if (want_timelike == 0 && n2v > 1e-8) {
        accepted.push_back(cand * (1.0 / std::sqrt(n2v)));
        signs.push_back(1.0);
        if (signs.size() == 4) break;
      } else if (want_timelike == 1 && n2v < -1e-8) {
        accepted.push_back(cand * (1.0 / std::sqrt(-n2v)));
        signs.push_back(-1.0);
      }
      if (want_timelike == 0 && accepted.size() == 3 && k == 5) break;
    }
    if (want_timelike == 0 && accepted.size() > 3) accepted.resize(3), signs.resize(3);
  }
  int timelike_at = -1;
  for (size_t a = 0; a < accepted.size(); ++a)
    if (signs[a] < 0) timelike_at = static_cast<int>(a);
  if (accepted.size() != 4 || timelike_at < 0)
    fail(Errc::DegenerateConfiguration, "base rotation: could not complete the basis");

  out.n0 = accepted[timelike_at];
  int slot = 0;
  SigVec* spacelike[3] = {&out.n1, &out.n2, &out.n3};
  for (size_t a = 0; a < accepted.size(); ++a)
    if (static_cast<int>(a) != timelike_at) *spacelike[slot++] = accepted[a];
  return out;
}

Mat6 columns_to_matrix(const SigVec cols[6]) {
  Mat6 out;
  for (int c = 0; c < 6; ++c)
    for (int r = 0; r < 6; ++r) out(r, c) = cols[c][r];
  return out;
}

}  // namespace

Mat6 build_base_rotation(const SigVec& pplus, const SigVec& pminus) {
  const SplitBasis sb = split_conserved_plane(pplus, pminus);
  // Source basis columns carry the same Gram matrix as (p, q, y0, y1, y2, y3),
  // so mapping one onto the other is an isometry: R = Id * Source^{-1}.
  const SigVec cols[6] = {sb.t1, sb.s1, sb.n0, sb.n1, sb.n2, sb.n3};
  return columns_to_matrix(cols).inverse();
}

BaseBundle make_base_bundle(const HarmonicPotential& phi, const GridDomain& dom,
                            const DeformOptions& opts) {
  dom.validate();
  IntegrateOptions iopts;
  iopts.substeps = opts.substeps;
  BaseBundle base;
  base.dom = dom;
  base.frame0 = integrate_frame(phi, dom, 0.0, iopts);
  base.front0 = front_from_frame(base.frame0);
  // Connection sampled at doubled resolution so the transport's one-step
  // method sees exact mid-edge values.
  const FrameGrid fine = integrate_frame(phi, dom.refined(), 0.0, iopts);
  base.tau = tau_form_exact(fine, phi);
  return base;
}

DeformResult deform_front(const HarmonicPotential& phi, const GridDomain& dom, double lambda,
                          const DeformOptions& opts) {
  if (lambda == 0.5)
    fail(Errc::DegenerateParameter,
         "lambda = 1/2 is degenerate: (p+,p-)(lambda) = -2(1-2 lambda) = 0");
  if (!opts.with_pipeline_b) {
    IntegrateOptions iopts;
    iopts.substeps = opts.substeps;
    DeformResult out;
    out.front = front_from_frame(integrate_frame(phi, dom, lambda, iopts));
    return out;
  }
  return deform_with_base(make_base_bundle(phi, dom, opts), phi, lambda, opts);
}

DeformResult deform_with_base(const BaseBundle& base, const HarmonicPotential& phi,
                              double lambda, const DeformOptions& opts) {
  if (lambda == 0.5)
    fail(Errc::DegenerateParameter,
         "lambda = 1/2 is degenerate: (p+,p-)(lambda) = -2(1-2 lambda) = 0");
  const GridDomain& dom = base.dom;

  IntegrateOptions iopts;
  iopts.substeps = opts.substeps;

  DeformResult out;

  // Pipeline A: the reduced frame system at lambda.
  const FrameGrid frame_l = integrate_frame(phi, dom, lambda, iopts);
  out.front = front_from_frame(frame_l);

  DeformationState st = calapso_transport(base.tau, lambda, dom);

  const ConservedQuantityGrid cq = conserved_quantity(base.front0, lambda);
  out.conservation = conservation_drift(st, cq);

  const int bi = dom.bi(), bj = dom.bj();
  st.base_rotation = build_base_rotation(cq.pp.at(bi, bj), cq.pm.at(bi, bj));

  const double mu2 = 1.0 - 2.0 * lambda;
  const double mu = std::sqrt(std::abs(mu2));
  const bool super = mu2 < 0.0;
  const AmbientSplit split = AmbientSplit::standard();

  // Transported, rotated, normalized h± fields; branch rule:
  //   subcritical:  hhat± = (R T h±)/mu
  //   supercritical: hhat+ = (R T h+)/mu, hhat- = -(R T h-)/mu
  // after which f = (hhat+ - hhat-)/2, t = (hhat+ + hhat-)/2 on both branches.
  Grid<SigVec> fb(dom.nu, dom.nv, SigVec(Sig::R31)), tb(dom.nu, dom.nv, SigVec(Sig::R31));
  Grid<SigVec> e1b(dom.nu, dom.nv, SigVec(Sig::R31)), e2b(dom.nu, dom.nv, SigVec(Sig::R31));
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const SigVec f42 = embed_r42(base.front0.f.at(i, j));
      const SigVec t42 = embed_r42(base.front0.t.at(i, j));
      const SigVec hp = -lambda * (split.p + split.q) + (1.0 - lambda) * (t42 + f42);
      const SigVec hm = -lambda * (split.p - split.q) + (1.0 - lambda) * (t42 - f42);
      const Mat6 rt = st.base_rotation * st.T.at(i, j);
      SigVec hhp = apply(rt, hp) * (1.0 / mu);
      SigVec hhm = apply(rt, hm) * ((super ? -1.0 : 1.0) / mu);
      const SigVec e1r = apply(rt, embed_r42(base.front0.e1.at(i, j)));
      const SigVec e2r = apply(rt, embed_r42(base.front0.e2.at(i, j)));
      fb.at(i, j) = r31_part(0.5 * (hhp - hhm));
      tb.at(i, j) = r31_part(0.5 * (hhp + hhm));
      e1b.at(i, j) = r31_part(e1r);
      e2b.at(i, j) = r31_part(e2r);
    }

  // Align pipeline B's base frame with the canonical one; both quadruples
  // carry the canonical Gram matrix, so the change of basis is an isometry.
  Mat4 align;
  {
    SigVec hpb = tb.at(bi, bj) + fb.at(bi, bj);
    SigVec hmb = tb.at(bi, bj) - fb.at(bi, bj);
    Mat4 b;
    const SigVec* cols[4] = {&e1b.at(bi, bj), &e2b.at(bi, bj), &hpb, &hmb};
    for (int c = 0; c < 4; ++c)
      for (int r = 0; r < 4; ++r) b(r, c) = (*cols[c])[r];
    const BaseFrame canon = initial_frame(lambda);
    Mat4 cmat;
    const SigVec* ccols[4] = {&canon.e1, &canon.e2, &canon.hplus, &canon.hminus};
    for (int c = 0; c < 4; ++c)
      for (int r = 0; r < 4; ++r) cmat(r, c) = (*ccols[c])[r];
    align = cmat * b.inverse();
  }

  double agree = 0.0;
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const SigVec fa = out.front.f.at(i, j);
      const SigVec ta = out.front.t.at(i, j);
      const SigVec fbb = apply(align, fb.at(i, j));
      const SigVec tbb = apply(align, tb.at(i, j));
      agree = std::max(agree, euclid_norm(fa - fbb));
      agree = std::max(agree, euclid_norm(ta - tbb));
    }
  out.pipeline_agreement = agree;
  out.state = std::move(st);
  return out;
}

}  // namespace flatfront
