#include "gpr/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace gpr {

namespace {

double tri_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * cross(b - a, c - a);
}

}  // namespace

void PrimalMesh::update_geometry() {
  const int nt = ntri();
  triArea.resize(nt);
  bary.resize(nt);
  gradLambda.resize(nt);
  domainArea = 0.0;
  for (int t = 0; t < nt; ++t) {
    const Vec2 c0 = corner(t, 0), c1 = corner(t, 1), c2 = corner(t, 2);
    const double a = tri_area(c0, c1, c2);
    if (a <= 0.0)
      throw MeshError("update_geometry: inverted or degenerate triangle " + std::to_string(t) +
                      " (area " + std::to_string(a) + ")");
    triArea[t] = a;
    domainArea += a;
    bary[t] = (c0 + c1 + c2) * (1.0 / 3.0);
    // grad lambda_k = perp(c_{k+1} - c_{k+2})/(2A)
    const double inv2A = 1.0 / (2.0 * a);
    gradLambda[t][0] = perp(c1 - c2) * inv2A;
    gradLambda[t][1] = perp(c2 - c0) * inv2A;
    gradLambda[t][2] = perp(c0 - c1) * inv2A;
  }
}

void PrimalMesh::set_coords(const std::vector<Vec2>& Xnew) {
  if (static_cast<int>(Xnew.size()) != nv)
    throw MeshError("set_coords: vertex count changed");
  X = Xnew;
  update_geometry();
}

DualMesh build_dual(const PrimalMesh& pm) {
  DualMesh dm;
  dm.ncells = pm.nfaces();
  dm.isBoundary.assign(dm.ncells, 0);
  for (int f = 0; f < dm.ncells; ++f) dm.isBoundary[f] = (pm.face[f].tR < 0) ? 1 : 0;

  // one interior dual face per (triangle, corner)
  dm.dface.reserve(3 * pm.ntri());
  for (int t = 0; t < pm.ntri(); ++t) {
    for (int k = 0; k < 3; ++k) {
      DualMesh::DFace df;
      df.tri = t;
      df.c = k;
      const int fa = pm.triFace[t][k];            // edge starting at corner k
      const int fb = pm.triFace[t][(k + 2) % 3];  // edge ending at corner k
      // orientation: normal perp(corner - bary); cell on the normal side is the neighbor
      const Vec2 dir = pm.corner(t, k) - pm.bary[t];
      const Vec2 mid_a = (pm.corner(t, k) + pm.corner(t, (k + 1) % 3)) * 0.5;
      if (dot(perp(dir), mid_a - pm.bary[t]) > 0.0) {
        df.cOwn = fb;
        df.cNbr = fa;
      } else {
        df.cOwn = fa;
        df.cNbr = fb;
      }
      df.ownGen = (pm.face[df.cOwn].tL == t) ? 0 : 1;
      df.nbrGen = (pm.face[df.cNbr].tL == t) ? 0 : 1;
      dm.dface.push_back(df);
    }
  }

  dm.cellFaces.assign(dm.ncells, {});
  for (int d = 0; d < static_cast<int>(dm.dface.size()); ++d) {
    dm.cellFaces[dm.dface[d].cOwn].push_back({d, false, +1.0});
    dm.cellFaces[dm.dface[d].cNbr].push_back({d, false, -1.0});
  }
  for (int f = 0; f < dm.ncells; ++f)
    if (dm.isBoundary[f]) dm.cellFaces[f].push_back({f, true, +1.0});

  dm.rebuild_geometry(pm);
  return dm;
}

void DualMesh::rebuild_geometry(const PrimalMesh& pm) {
  area.assign(ncells, 0.0);
  genArea.assign(ncells, {0.0, 0.0});
  node.resize(ncells);
  centroidInGen.resize(ncells);
  incircle.assign(ncells, 0.0);
  gradCoef.assign(pm.ntri(), {});

  for (int f = 0; f < ncells; ++f) {
    const auto& fc = pm.face[f];
    const Vec2 c0 = pm.corner(fc.tL, fc.eL);
    const Vec2 c1 = pm.corner(fc.tL, (fc.eL + 1) % 3);
    node[f] = (c0 + c1) * 0.5;
    const double aL = pm.triArea[fc.tL] / 3.0;
    genArea[f][0] = aL;
    const Vec2 bL = pm.bary[fc.tL];
    const Vec2 centL = (c0 + c1 + bL) * (1.0 / 3.0);
    double per = norm(bL - c0) + norm(bL - c1);
    if (fc.tR >= 0) {
      const double aR = pm.triArea[fc.tR] / 3.0;
      genArea[f][1] = aR;
      // frame shift between the two generators (nonzero across periodic seams)
      const Vec2 c0R = pm.corner(fc.tR, (fc.eR + 1) % 3);  // equals v0 in tR frame
      const Vec2 off = c0 - c0R;
      const Vec2 bR = pm.bary[fc.tR] + off;
      const Vec2 centR = (c0 + c1 + bR) * (1.0 / 3.0);
      area[f] = aL + aR;
      centroidInGen[f][0] = (centL * aL + centR * aR) * (1.0 / (aL + aR));
      centroidInGen[f][1] = centroidInGen[f][0] - off;
      per += norm(bR - c0) + norm(bR - c1);
    } else {
      area[f] = aL;
      centroidInGen[f][0] = centL;
      centroidInGen[f][1] = centL;
      per += norm(c1 - c0);
    }
    incircle[f] = 4.0 * area[f] / per;
  }

  for (int t = 0; t < pm.ntri(); ++t) {
    Vec2 p[3];
    for (int e = 0; e < 3; ++e) {
      const int fId = pm.triFace[t][e];
      p[e] = centroidInGen[fId][(pm.face[fId].tL == t) ? 0 : 1];
    }
    const Vec2 d1 = p[1] - p[0], d2 = p[2] - p[0];
    const double det2 = cross(d1, d2);
    if (std::abs(det2) < 1e-14 * pm.triArea[t])
      throw MeshError("rebuild_geometry: collinear dual centroids in element " +
                      std::to_string(t));
    const Vec2 a{d2.y / det2, -d2.x / det2};   // weight of q1 - q0
    const Vec2 b{-d1.y / det2, d1.x / det2};   // weight of q2 - q0
    gradCoef[t][1] = a;
    gradCoef[t][2] = b;
    gradCoef[t][0] = Vec2{-a.x - b.x, -a.y - b.y};
  }
}

SpaceTimeGeom spacetime_face_normals(const PrimalMesh& pm, const DualMesh& dm,
                                     const std::vector<Vec2>& Xold,
                                     const std::vector<Vec2>& Xnew, double dt) {
  if (dt <= 0.0) throw MeshError("spacetime_face_normals: dt must be positive");
  SpaceTimeGeom st;
  st.dt = dt;
  st.nInterior = static_cast<int>(dm.dface.size());

  auto cornerAt = [&](const std::vector<Vec2>& X, int t, int k) {
    return X[pm.tri[t][k]] + pm.wrapOff[t][k];
  };
  auto baryAt = [&](const std::vector<Vec2>& X, int t) {
    return (cornerAt(X, t, 0) + cornerAt(X, t, 1) + cornerAt(X, t, 2)) * (1.0 / 3.0);
  };

  // 2x2 Gauss is exact for the bilinear integrand of the ruled face
  const double gl = 0.5 - 0.5 / std::sqrt(3.0), gr = 0.5 + 0.5 / std::sqrt(3.0);
  const double gp[2] = {gl, gr};

  auto integrate = [&](const Vec2& p0o, const Vec2& p1o, const Vec2& p0n, const Vec2& p1n,
                       double& etaT, Vec2& etaX) {
    etaT = 0.0;
    etaX = Vec2{0.0, 0.0};
    for (int gi = 0; gi < 2; ++gi)
      for (int gj = 0; gj < 2; ++gj) {
        const double chi = gp[gi], tau = gp[gj];
        const Vec2 a = (p1o - p0o) * (1.0 - tau) + (p1n - p0n) * tau;
        const Vec2 b = (p0n - p0o) * (1.0 - chi) + (p1n - p1o) * chi;
        etaT += 0.25 * (a.x * b.y - a.y * b.x);
        etaX += 0.25 * dt * perp(a);
      }
  };

  const int nb = [&] {
    int c = 0;
    for (int f = 0; f < dm.ncells; ++f) c += dm.isBoundary[f];
    return c;
  }();
  st.etaT.resize(st.nInterior + nb);
  st.etaX.resize(st.nInterior + nb);
  st.midST.resize(st.nInterior + nb);
  st.halfSeg.resize(st.nInterior + nb);
  st.boundaryFaceId.reserve(nb);

  for (int d = 0; d < st.nInterior; ++d) {
    const auto& df = dm.dface[d];
    const Vec2 p0o = baryAt(Xold, df.tri), p1o = cornerAt(Xold, df.tri, df.c);
    const Vec2 p0n = baryAt(Xnew, df.tri), p1n = cornerAt(Xnew, df.tri, df.c);
    integrate(p0o, p1o, p0n, p1n, st.etaT[d], st.etaX[d]);
    st.midST[d] = (p0o + p1o + p0n + p1n) * 0.25;
    st.halfSeg[d] = ((p1o + p1n) - (p0o + p0n)) * 0.25;
  }
  for (int f = 0; f < dm.ncells; ++f) {
    if (!dm.isBoundary[f]) continue;
    const auto& fc = pm.face[f];
    const int k0 = fc.eL, k1 = (fc.eL + 1) % 3;
    const int slot = st.nInterior + static_cast<int>(st.boundaryFaceId.size());
    const Vec2 p0o = cornerAt(Xold, fc.tL, k0), p1o = cornerAt(Xold, fc.tL, k1);
    const Vec2 p0n = cornerAt(Xnew, fc.tL, k0), p1n = cornerAt(Xnew, fc.tL, k1);
    integrate(p0o, p1o, p0n, p1n, st.etaT[slot], st.etaX[slot]);
    st.midST[slot] = (p0o + p1o + p0n + p1n) * 0.25;
    st.halfSeg[slot] = ((p1o + p1n) - (p0o + p0n)) * 0.25;
    st.boundaryFaceId.push_back(f);
  }

  st.areaOld.assign(dm.ncells, 0.0);
  st.areaNew.assign(dm.ncells, 0.0);
  st.volST.assign(dm.ncells, 0.0);
  auto subArea = [&](const std::vector<Vec2>& X, int t) {
    return tri_area(cornerAt(X, t, 0), cornerAt(X, t, 1), cornerAt(X, t, 2)) / 3.0;
  };
  for (int f = 0; f < dm.ncells; ++f) {
    const auto& fc = pm.face[f];
    double ao = subArea(Xold, fc.tL), an = subArea(Xnew, fc.tL);
    if (fc.tR >= 0) {
      ao += subArea(Xold, fc.tR);
      an += subArea(Xnew, fc.tR);
    }
    st.areaOld[f] = ao;
    st.areaNew[f] = an;
    st.volST[f] = 0.5 * (ao + an) * dt;
  }
  return st;
}

double gcl_residual(const SpaceTimeGeom& st, const DualMesh& dm, int cell) {
  double sumT = 0.0;
  Vec2 sumX{0.0, 0.0};
  // boundary slots are indexed by primal face id; locate the appended slot
  auto boundarySlot = [&](int faceId) {
    const auto it = std::lower_bound(st.boundaryFaceId.begin(), st.boundaryFaceId.end(), faceId);
    return st.nInterior + static_cast<int>(it - st.boundaryFaceId.begin());
  };
  for (const auto& ref : dm.cellFaces[cell]) {
    const int slot = ref.boundary ? boundarySlot(ref.id) : ref.id;
    sumT += ref.sign * st.etaT[slot];
    sumX += ref.sign * st.etaX[slot];
  }
  const double temporal = std::abs(st.areaNew[cell] - st.areaOld[cell] + sumT);
  return std::max(temporal, norm(sumX));
}

PrimalMesh make_square_mesh(double lx, double ly, int nx, int ny, bool periodicX,
                            bool periodicY, Vec2 origin, MeshPattern pattern) {
  if (nx < 1 || ny < 1) throw MeshError("make_square_mesh: need at least one division");
  if ((periodicX && nx < 3) || (periodicY && ny < 3))
    throw MeshError("make_square_mesh: periodic direction needs at least 3 divisions");
  PrimalMesh pm;
  pm.periodicX = periodicX;
  pm.periodicY = periodicY;
  pm.domainLo = origin;
  pm.domainHi = origin + Vec2{lx, ly};
  const int nvx = periodicX ? nx : nx + 1;
  const int nvy = periodicY ? ny : ny + 1;
  pm.nv = nvx * nvy;
  pm.X.resize(pm.nv);
  const double hx = lx / nx, hy = ly / ny;
  for (int j = 0; j < nvy; ++j)
    for (int i = 0; i < nvx; ++i)
      pm.X[j * nvx + i] = origin + Vec2{i * hx, j * hy};

  auto vid = [&](int i, int j) { return (j % nvy) * nvx + (i % nvx); };
  auto off = [&](int i, int j) {
    Vec2 o{0.0, 0.0};
    if (periodicX && i == nx) o.x = lx;
    if (periodicY && j == ny) o.y = ly;
    return o;
  };

  pm.tri.reserve(2 * nx * ny);
  pm.wrapOff.reserve(2 * nx * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const bool ne = (pattern == MeshPattern::same) || ((i + j) % 2 == 0);
      if (ne) {
        // diagonal along (i,j)-(i+1,j+1), both triangles CCW
        pm.tri.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
        pm.wrapOff.push_back({off(i, j), off(i + 1, j), off(i + 1, j + 1)});
        pm.tri.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
        pm.wrapOff.push_back({off(i, j), off(i + 1, j + 1), off(i, j + 1)});
      } else {
        // diagonal along (i+1,j)-(i,j+1)
        pm.tri.push_back({vid(i, j), vid(i + 1, j), vid(i, j + 1)});
        pm.wrapOff.push_back({off(i, j), off(i + 1, j), off(i, j + 1)});
        pm.tri.push_back({vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
        pm.wrapOff.push_back({off(i + 1, j), off(i + 1, j + 1), off(i, j + 1)});
      }
    }

  // faces from shared edges
  std::map<std::pair<int, int>, int> edgeMap;
  pm.triFace.assign(pm.ntri(), {-1, -1, -1});
  for (int t = 0; t < pm.ntri(); ++t) {
    for (int e = 0; e < 3; ++e) {
      const int a = pm.tri[t][e], b = pm.tri[t][(e + 1) % 3];
      const auto key = std::minmax(a, b);
      auto it = edgeMap.find(key);
      if (it == edgeMap.end()) {
        PrimalMesh::Face fc;
        fc.v0 = a;
        fc.v1 = b;
        fc.tL = t;
        fc.eL = e;
        edgeMap.emplace(key, static_cast<int>(pm.face.size()));
        pm.triFace[t][e] = static_cast<int>(pm.face.size());
        pm.face.push_back(fc);
      } else {
        auto& fc = pm.face[it->second];
        if (fc.tR >= 0) throw MeshError("make_square_mesh: non-manifold edge");
        fc.tR = t;
        fc.eR = e;
        pm.triFace[t][e] = it->second;
      }
    }
  }

  // boundary tags: 0 left, 1 right, 2 bottom, 3 top
  const double tol = 1e-9 * std::max(lx, ly);
  auto tagOf = [&](const Vec2& p) {
    if (!periodicX && std::abs(p.x - origin.x) < tol) return 0;
    if (!periodicX && std::abs(p.x - origin.x - lx) < tol) return 1;
    if (!periodicY && std::abs(p.y - origin.y) < tol) return 2;
    if (!periodicY && std::abs(p.y - origin.y - ly) < tol) return 3;
    return -1;
  };
  pm.update_geometry();
  for (auto& fc : pm.face) {
    if (fc.tR >= 0) continue;
    const Vec2 mid = (pm.corner(fc.tL, fc.eL) + pm.corner(fc.tL, (fc.eL + 1) % 3)) * 0.5;
    fc.tag = tagOf(mid);
    if (fc.tag < 0) throw MeshError("make_square_mesh: untagged boundary face");
  }
  pm.vertTag.assign(pm.nv, -1);
  for (int v = 0; v < pm.nv; ++v) pm.vertTag[v] = tagOf(pm.X[v]);

  pm.vertTris.assign(pm.nv, {});
  for (int t = 0; t < pm.ntri(); ++t)
    for (int k = 0; k < 3; ++k) pm.vertTris[pm.tri[t][k]].push_back(t);
  pm.vertFaces.assign(pm.nv, {});
  for (int f = 0; f < pm.nfaces(); ++f) {
    pm.vertFaces[pm.face[f].v0].push_back(f);
    pm.vertFaces[pm.face[f].v1].push_back(f);
  }
  return pm;
}

PrimalMesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("read_mesh: cannot open " + path);
  int nv = 0, nt = 0, nbf = 0;
  in >> nv >> nt >> nbf;
  if (!in || nv < 3 || nt < 1) throw MeshError("read_mesh: bad header in " + path);
  PrimalMesh pm;
  pm.nv = nv;
  pm.X.resize(nv);
  for (int v = 0; v < nv; ++v) in >> pm.X[v].x >> pm.X[v].y;
  pm.tri.resize(nt);
  pm.wrapOff.assign(nt, {Vec2{}, Vec2{}, Vec2{}});
  for (int t = 0; t < nt; ++t) {
    int a, b, c;
    in >> a >> b >> c;
    pm.tri[t] = {a - 1, b - 1, c - 1};  // 1-based on disk
  }
  std::vector<std::array<int, 3>> btags(nbf);
  for (int i = 0; i < nbf; ++i) {
    int a, b, tag;
    in >> a >> b >> tag;
    btags[i] = {a - 1, b - 1, tag};
  }
  if (!in) throw MeshError("read_mesh: truncated file " + path);

  // fix orientation, then build faces as in the generator
  for (int t = 0; t < nt; ++t) {
    const Vec2 c0 = pm.X[pm.tri[t][0]], c1 = pm.X[pm.tri[t][1]], c2 = pm.X[pm.tri[t][2]];
    if (tri_area(c0, c1, c2) < 0.0) std::swap(pm.tri[t][1], pm.tri[t][2]);
  }
  std::map<std::pair<int, int>, int> edgeMap;
  pm.triFace.assign(nt, {-1, -1, -1});
  for (int t = 0; t < nt; ++t)
    for (int e = 0; e < 3; ++e) {
      const int a = pm.tri[t][e], b = pm.tri[t][(e + 1) % 3];
      const auto key = std::minmax(a, b);
      auto it = edgeMap.find(key);
      if (it == edgeMap.end()) {
        PrimalMesh::Face fc;
        fc.v0 = a;
        fc.v1 = b;
        fc.tL = t;
        fc.eL = e;
        edgeMap.emplace(key, static_cast<int>(pm.face.size()));
        pm.triFace[t][e] = static_cast<int>(pm.face.size());
        pm.face.push_back(fc);
      } else {
        auto& fc = pm.face[it->second];
        if (fc.tR >= 0) throw MeshError("read_mesh: non-manifold edge in " + path);
        fc.tR = t;
        fc.eR = e;
        pm.triFace[t][e] = it->second;
      }
    }
  std::map<std::pair<int, int>, int> btagMap;
  for (const auto& bt : btags) btagMap[std::minmax(bt[0], bt[1])] = bt[2];
  pm.vertTag.assign(nv, -1);
  for (auto& fc : pm.face) {
    if (fc.tR >= 0) continue;
    auto it = btagMap.find(std::minmax(fc.v0, fc.v1));
    fc.tag = (it != btagMap.end()) ? it->second : 0;
    pm.vertTag[fc.v0] = fc.tag;
    pm.vertTag[fc.v1] = fc.tag;
  }
  pm.update_geometry();
  pm.domainLo = pm.domainHi = pm.X[0];
  for (const auto& p : pm.X) {
    pm.domainLo.x = std::min(pm.domainLo.x, p.x);
    pm.domainLo.y = std::min(pm.domainLo.y, p.y);
    pm.domainHi.x = std::max(pm.domainHi.x, p.x);
    pm.domainHi.y = std::max(pm.domainHi.y, p.y);
  }
  pm.vertTris.assign(nv, {});
  for (int t = 0; t < nt; ++t)
    for (int k = 0; k < 3; ++k) pm.vertTris[pm.tri[t][k]].push_back(t);
  pm.vertFaces.assign(nv, {});
  for (int f = 0; f < pm.nfaces(); ++f) {
    pm.vertFaces[pm.face[f].v0].push_back(f);
    pm.vertFaces[pm.face[f].v1].push_back(f);
  }
  return pm;
}

void write_mesh(const PrimalMesh& pm, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MeshError("write_mesh: cannot open " + path);
  int nbf = 0;
  for (const auto& fc : pm.face) nbf += (fc.tR < 0);
  out << pm.nv << " " << pm.ntri() << " " << nbf << "\n";
  out.precision(17);
  for (const auto& p : pm.X) out << p.x << " " << p.y << "\n";
  for (const auto& t : pm.tri) out << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
  for (const auto& fc : pm.face)
    if (fc.tR < 0) out << fc.v0 + 1 << " " << fc.v1 + 1 << " " << fc.tag << "\n";
}

}  // namespace gpr
