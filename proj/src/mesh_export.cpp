#include "flatfront/mesh_export.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

#include "flatfront/errors.hpp"

namespace flatfront {

std::string fmt17(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  if (ec != std::errc()) fail(Errc::Io, "fmt17: conversion failed");
  return std::string(buf, ptr);
}

void write_obj(const FrontGrid& front, std::ostream& out, const std::string& model) {
  const GridDomain& dom = front.dom;
  out << "# flat front mesh, " << dom.nu << " x " << dom.nv << " grid, lambda = "
      << fmt17(front.lambda) << "\n";
  out << "# model: " << model << "\n";

  std::string singular_ids;
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i)
      if (front.singular.at(i, j)) {
        singular_ids += ' ';
        singular_ids += std::to_string(j * dom.nu + i + 1);
      }
  if (!singular_ids.empty()) out << "# singular vertices:" << singular_ids << "\n";

  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const SigVec& f = front.f.at(i, j);
      if (model == "poincare") {
        const double den = 1.0 + f[0];
        out << "v " << fmt17(f[1] / den) << " " << fmt17(f[2] / den) << " " << fmt17(f[3] / den)
            << "\n";
      } else {
        out << "v " << fmt17(f[1]) << " " << fmt17(f[2]) << " " << fmt17(f[3]) << "\n";
      }
    }

  for (int j = 0; j + 1 < dom.nv; ++j)
    for (int i = 0; i + 1 < dom.nu; ++i) {
      const int a = j * dom.nu + i + 1;
      const int b = j * dom.nu + i + 2;
      const int c = (j + 1) * dom.nu + i + 2;
      const int d = (j + 1) * dom.nu + i + 1;
      out << "f " << a << " " << b << " " << c << " " << d << "\n";
    }
}

void write_csv(const FrontGrid& front, std::ostream& out) {
  const GridDomain& dom = front.dom;
  out << "u,v,f_y0,f_y1,f_y2,f_y3,t_y0,t_y1,t_y2,t_y3,E,G,kappa1,kappa2,singular\n";
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const SigVec& f = front.f.at(i, j);
      const SigVec& t = front.t.at(i, j);
      out << fmt17(dom.u(i)) << "," << fmt17(dom.v(j));
      for (int k = 0; k < 4; ++k) out << "," << fmt17(f[k]);
      for (int k = 0; k < 4; ++k) out << "," << fmt17(t[k]);
      out << "," << fmt17(front.E.at(i, j)) << "," << fmt17(front.G.at(i, j)) << ","
          << fmt17(front.k1.at(i, j)) << "," << fmt17(front.k2.at(i, j)) << ","
          << int(front.singular.at(i, j)) << "\n";
    }
}

void export_mesh(const FrontGrid& front, const std::string& path, const std::string& format,
                 const std::string& model) {
  std::ofstream out(path);
  if (!out) fail(Errc::Io, "cannot open '" + path + "' for writing");
  if (format == "obj")
    write_obj(front, out, model);
  else if (format == "csv")
    write_csv(front, out);
  else
    fail(Errc::Io, "unknown mesh format '" + format + "'");
  out.flush();
  if (!out) fail(Errc::Io, "write failed for '" + path + "'");
}

}  // namespace flatfront
