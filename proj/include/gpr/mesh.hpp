#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpr/tensor.hpp"

namespace gpr {

struct MeshError : std::runtime_error {
  explicit MeshError(const std::string& msg) : std::runtime_error(msg) {}
};

// Primal triangulation. Periodic meshes carry wrapped vertex ids plus per-corner
// coordinate offsets so every triangle sees a contiguous frame.
struct PrimalMesh {
  int nv = 0;
  std::vector<Vec2> X;  // vertex coordinates (current configuration)
  std::vector<std::array<int, 3>> tri;
  std::vector<std::array<Vec2, 3>> wrapOff;

  struct Face {
    int v0 = -1, v1 = -1;  // endpoints, ordered CCW in tL
    int tL = -1, tR = -1;  // tR = -1 on boundary
    int eL = 0, eR = 0;    // local edge index in each triangle
    int tag = -1;          // boundary tag
  };
  std::vector<Face> face;
  std::vector<std::array<int, 3>> triFace;  // face id of local edge e = (v_e, v_{e+1})
  std::vector<int> vertTag;                 // -1 interior
  std::vector<std::vector<int>> vertTris;   // incident triangles
  std::vector<std::vector<int>> vertFaces;  // incident primal faces (= dual cells)

  bool periodicX = false, periodicY = false;
  Vec2 domainLo, domainHi;

  // geometry, refreshed by update_geometry()
  std::vector<double> triArea;
  std::vector<Vec2> bary;                          // barycenter, own frame
  std::vector<std::array<Vec2, 3>> gradLambda;     // P1 basis gradients
  double domainArea = 0.0;

  Vec2 corner(int t, int k) const { return X[tri[t][k]] + wrapOff[t][k]; }
  int ntri() const { return static_cast<int>(tri.size()); }
  int nfaces() const { return static_cast<int>(face.size()); }

  // recompute areas, barycenters and basis gradients; throws MeshError on an
  // inverted element (topology is fixed, only coordinates may change)
  void update_geometry();
  void set_coords(const std::vector<Vec2>& Xnew);
};

// Dual (diamond) grid: one cell per primal face, built from barycenter subtriangles.
struct DualMesh {
  // interior dual faces: segment barycenter(tri) -> corner(tri, c)
  struct DFace {
    int tri = -1, c = 0;
    int cOwn = -1, cNbr = -1;  // normal perp(corner-bary) is outward from cOwn
    signed char ownGen = 0, nbrGen = 0;  // generator slot of tri within each cell
  };
  std::vector<DFace> dface;

  struct CellFaceRef {
    int id;          // dface id, or primal face id if boundary
    bool boundary;
    double sign;     // +1 outward, -1 inward
  };
  std::vector<std::vector<CellFaceRef>> cellFaces;

  int ncells = 0;
  std::vector<char> isBoundary;

  // geometry, refreshed with the primal mesh
  std::vector<double> area;                       // |C_i|
  std::vector<std::array<double, 2>> genArea;      // |T_ki| per generator ([1]=0 on boundary)
  std::vector<Vec2> node;                          // primal face midpoint, tL frame
  std::vector<std::array<Vec2, 2>> centroidInGen;  // cell centroid in each generator frame
  std::vector<double> incircle;                    // incircle diameter 4A/P
  // per-element gradient weights: grad q = sum_e gradCoef[t][e] * q(face e); the
  // plane through the three dual-cell centroids (exact for linear fields on any
  // valid geometry, identical to Crouzeix-Raviart on uniform grids)
  std::vector<std::array<Vec2, 3>> gradCoef;

  void rebuild_geometry(const PrimalMesh& pm);
};

DualMesh build_dual(const PrimalMesh& pm);

// integrated space-time normals over one step; faces indexed as interior dfaces
// first, boundary primal faces appended (id offset nInterior)
struct SpaceTimeGeom {
  int nInterior = 0;
  std::vector<double> etaT;
  std::vector<Vec2> etaX;
  std::vector<Vec2> midST;                      // face midpoint at (chi,tau)=(1/2,1/2), tri frame
  std::vector<Vec2> halfSeg;                    // mid-time half segment (chi: 1/2 -> 1)
  std::vector<double> areaOld, areaNew, volST;  // per dual cell; volST = |C~_i|
  std::vector<int> boundaryFaceId;              // primal face id per appended slot
  double dt = 0.0;
};

SpaceTimeGeom spacetime_face_normals(const PrimalMesh& pm, const DualMesh& dm,
                                     const std::vector<Vec2>& Xold,
                                     const std::vector<Vec2>& Xnew, double dt);

// max of temporal and spatial closure defects of the GCL for one cell
double gcl_residual(const SpaceTimeGeom& st, const DualMesh& dm, int cell);

// generators and file IO
// pattern: same-direction diagonals or alternating (union-jack, symmetric under
// quarter turns and the diagonal reflection)
enum class MeshPattern { same, alternating };
PrimalMesh make_square_mesh(double lx, double ly, int nx, int ny, bool periodicX,
                            bool periodicY, Vec2 origin = Vec2{0.0, 0.0},
                            MeshPattern pattern = MeshPattern::same);
PrimalMesh read_mesh(const std::string& path);
void write_mesh(const PrimalMesh& pm, const std::string& path);

}  // namespace gpr
