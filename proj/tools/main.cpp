#include <CLI11.hpp>

#include <functional>
#include <iostream>

#include "commands.hpp"

using carnot_cli::CmdResult;

int main(int argc, char** argv) {
  CLI::App app{"carnot: Carnot group algebra, Rockland scans and index invariants"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "also write the JSON report to this path");

  std::function<CmdResult()> action;

  // validate
  {
    auto* c = app.add_subcommand("validate", "check algebra file invariants");
    auto path = std::make_shared<std::string>();
    c->add_option("algebra", *path, "algebra JSON file")->required();
    c->callback([&action, path] { action = [path] { return carnot_cli::run_validate(*path); }; });
  }
  // bch
  {
    auto* c = app.add_subcommand("bch", "group product in exponential coordinates");
    auto a = std::make_shared<std::string>();
    auto x = std::make_shared<std::string>(), y = std::make_shared<std::string>();
    c->add_option("--algebra", *a)->required();
    c->add_option("--x", *x, "comma-separated rationals")->required();
    c->add_option("--y", *y)->required();
    c->callback([&action, a, x, y] {
      action = [a, x, y] { return carnot_cli::run_bch(*a, *x, *y); };
    });
  }
  // dilate
  {
    auto* c = app.add_subcommand("dilate", "apply the grading dilation");
    auto a = std::make_shared<std::string>(), l = std::make_shared<std::string>(),
         x = std::make_shared<std::string>();
    c->add_option("--algebra", *a)->required();
    c->add_option("--lambda", *l)->required();
    c->add_option("--x", *x)->required();
    c->callback([&action, a, l, x] {
      action = [a, l, x] { return carnot_cli::run_dilate(*a, *l, *x); };
    });
  }
  // dnc
  {
    auto* c = app.add_subcommand("dnc", "rescaled bracket family member");
    auto a = std::make_shared<std::string>(), t = std::make_shared<std::string>();
    c->add_option("--algebra", *a)->required();
    c->add_option("--t", *t)->required();
    c->callback([&action, a, t] { action = [a, t] { return carnot_cli::run_dnc(*a, *t); }; });
  }
  // gbar build|flatten
  {
    auto* g = app.add_subcommand("gbar", "central extension operations");
    g->require_subcommand(1);
    auto a = std::make_shared<std::string>();
    {
      auto* c = g->add_subcommand("build", "build the central extension");
      c->add_option("--algebra", *a)->required();
      c->callback([&action, a] { action = [a] { return carnot_cli::run_gbar_build(*a); }; });
    }
    {
      auto* c = g->add_subcommand("flatten", "coadjoint orbit flattening");
      auto ell = std::make_shared<std::string>(), t = std::make_shared<std::string>();
      c->add_option("--algebra", *a)->required();
      c->add_option("--ell", *ell, "dual coordinates on degrees 1..n-1")->required();
      c->add_option("--t", *t, "top dual coordinate (nonzero)")->required();
      c->callback([&action, a, ell, t] {
        action = [a, ell, t] { return carnot_cli::run_gbar_flatten(*a, *ell, *t); };
      });
    }
  }
  // op ...
  {
    auto* g = app.add_subcommand("op", "enveloping operator operations");
    g->require_subcommand(1);
    {
      auto* c = g->add_subcommand("normalize", "PBW normal form of an operator file");
      auto p = std::make_shared<std::string>();
      c->add_option("--operator", *p)->required();
      c->callback([&action, p] { action = [p] { return carnot_cli::run_op_normalize(*p); }; });
    }
    {
      auto* c = g->add_subcommand("multiply", "compose two operators (B first)");
      auto pa = std::make_shared<std::string>(), pb = std::make_shared<std::string>();
      c->add_option("--a", *pa)->required();
      c->add_option("--b", *pb)->required();
      c->callback([&action, pa, pb] {
        action = [pa, pb] { return carnot_cli::run_op_multiply(*pa, *pb); };
      });
    }
    {
      auto* c = g->add_subcommand("adjoint", "formal adjoint");
      auto p = std::make_shared<std::string>();
      c->add_option("--operator", *p)->required();
      c->callback([&action, p] { action = [p] { return carnot_cli::run_op_adjoint(*p); }; });
    }
    {
      auto* c = g->add_subcommand("sharp", "crossed-product block operator on gbar");
      auto d1 = std::make_shared<std::string>(), d2 = std::make_shared<std::string>(),
           gof = std::make_shared<std::string>(), cc = std::make_shared<std::string>("1");
      auto sym = std::make_shared<bool>(false);
      c->add_option("--d1", *d1)->required();
      c->add_option("--d2", *d2)->required();
      c->add_option("--gbar-of", *gof, "base algebra file g")->required();
      c->add_option("--c", *cc, "scaling of D2 (rational)");
      c->add_flag("--symmetric", *sym);
      c->callback([&action, d1, d2, gof, cc, sym] {
        action = [d1, d2, gof, cc, sym] {
          return carnot_cli::run_op_sharp(*d1, *d2, *gof, *cc, *sym);
        };
      });
    }
    {
      auto* c = g->add_subcommand("example1", "positive Rockland model operator");
      auto a = std::make_shared<std::string>();
      auto s = std::make_shared<int>(0);
      c->add_option("--algebra", *a)->required();
      c->add_option("--s", *s)->required();
      c->callback([&action, a, s] {
        action = [a, s] { return carnot_cli::run_op_example1(*a, *s); };
      });
    }
    {
      auto* c = g->add_subcommand("gamma-model", "-sum X_i^2 + i gamma T");
      auto a = std::make_shared<std::string>(), gm = std::make_shared<std::string>();
      c->add_option("--algebra", *a)->required();
      c->add_option("--gamma", *gm, "rational scalar, inline JSON matrix, or @file")
          ->required();
      c->callback([&action, a, gm] {
        action = [a, gm] { return carnot_cli::run_op_gamma(*a, *gm); };
      });
    }
    {
      auto* c = g->add_subcommand("dirac", "Dirac-type operator on one degree");
      auto a = std::make_shared<std::string>(), cl = std::make_shared<std::string>("pauli");
      auto deg = std::make_shared<int>(1);
      c->add_option("--algebra", *a)->required();
      c->add_option("--clifford", *cl, "'pauli' or a JSON file of matrices");
      c->add_option("--degree", *deg);
      c->callback([&action, a, cl, deg] {
        action = [a, cl, deg] { return carnot_cli::run_op_dirac(*a, *cl, *deg); };
      });
    }
  }
  // rep ...
  {
    auto* g = app.add_subcommand("rep", "representation-level checks");
    g->require_subcommand(1);
    {
      auto* c = g->add_subcommand("scan", "numerical Rockland sweep");
      auto p = std::make_shared<std::string>(), n = std::make_shared<std::string>("8,16,32");
      auto tol = std::make_shared<double>(1e-6);
      auto sph = std::make_shared<int>(32);
      c->add_option("--operator", *p)->required();
      c->add_option("--N", *n, "truncation ladder");
      c->add_option("--tol", *tol);
      c->add_option("--sphere-points", *sph, "sweep sphere grid density");
      c->callback([&action, p, n, tol, sph] {
        action = [p, n, tol, sph] { return carnot_cli::run_rep_scan(*p, *n, *tol, *sph); };
      });
    }
    {
      auto* c = g->add_subcommand("criterion", "exact gamma-model criterion");
      auto a = std::make_shared<std::string>(), gm = std::make_shared<std::string>();
      c->add_option("--algebra", *a)->required();
      c->add_option("--gamma", *gm)->required();
      c->callback([&action, a, gm] {
        action = [a, gm] { return carnot_cli::run_rep_criterion(*a, *gm); };
      });
    }
  }
  // index ...
  {
    auto* g = app.add_subcommand("index", "index invariants");
    g->require_subcommand(1);
    {
      auto* c = g->add_subcommand("fredholm", "stabilized index over a truncation ladder");
      auto p = std::make_shared<std::string>(), gof = std::make_shared<std::string>(),
           lad = std::make_shared<std::string>("8,16,32");
      auto tol = std::make_shared<double>(1e-8);
      auto sign = std::make_shared<int>(1);
      c->add_option("--operator", *p, "operator on gbar of the base algebra")->required();
      c->add_option("--gbar-of", *gof, "base algebra file")->required();
      c->add_option("--ladder", *lad);
      c->add_option("--tol", *tol);
      c->add_option("--sign", *sign, "+1 or -1 central character");
      c->callback([&action, p, gof, lad, tol, sign] {
        action = [p, gof, lad, tol, sign] {
          return carnot_cli::run_index_fredholm(*p, *gof, *lad, *tol, *sign);
        };
      });
    }
    {
      auto* c = g->add_subcommand("sf", "spectral flow along the affine path");
      auto f0 = std::make_shared<std::string>(), f1 = std::make_shared<std::string>();
      auto steps = std::make_shared<int>(64);
      c->add_option("--f0", *f0, "JSON matrix file")->required();
      c->add_option("--f1", *f1)->required();
      c->add_option("--steps", *steps);
      c->callback([&action, f0, f1, steps] {
        action = [f0, f1, steps] { return carnot_cli::run_index_sf(*f0, *f1, *steps); };
      });
    }
    {
      auto* c = g->add_subcommand("winding", "determinant winding number of a loop");
      auto p = std::make_shared<std::string>();
      c->add_option("--loop", *p, "JSON file with a list of matrices")->required();
      c->callback([&action, p] { action = [p] { return carnot_cli::run_index_winding(*p); }; });
    }
    {
      auto* c = g->add_subcommand("vanerp", "van Erp pair invariants at a point");
      auto gp = std::make_shared<std::string>(), d1 = std::make_shared<std::string>(),
           d2 = std::make_shared<std::string>(), cc = std::make_shared<std::string>("1"),
           lad = std::make_shared<std::string>("8,16,32"),
           tails = std::make_shared<std::string>("8,16,24");
      auto tol = std::make_shared<double>(1e-8);
      c->add_option("--g", *gp, "abelian base algebra file")->required();
      c->add_option("--d1", *d1)->required();
      c->add_option("--d2", *d2)->required();
      c->add_option("--c", *cc);
      c->add_option("--ladder", *lad);
      c->add_option("--tails", *tails);
      c->add_option("--tol", *tol);
      c->callback([&action, gp, d1, d2, cc, lad, tails, tol] {
        action = [gp, d1, d2, cc, lad, tails, tol] {
          return carnot_cli::run_index_vanerp(*gp, *d1, *d2, *cc, *lad, *tails, *tol);
        };
      });
    }
  }
  // osc ...
  {
    auto* g = app.add_subcommand("osc", "osculating algebra operations");
    g->require_subcommand(1);
    {
      auto* c = g->add_subcommand("check", "bracket-filtration condition at points");
      auto f = std::make_shared<std::string>(), pts = std::make_shared<std::string>();
      c->add_option("--fields", *f)->required();
      c->add_option("--points", *pts, "semicolon-separated rational points")->required();
      c->callback([&action, f, pts] {
        action = [f, pts] { return carnot_cli::run_osc_check(*f, *pts); };
      });
    }
    {
      auto* c = g->add_subcommand("algebra", "osculating Carnot algebra at a point");
      auto f = std::make_shared<std::string>(), pt = std::make_shared<std::string>();
      c->add_option("--fields", *f)->required();
      c->add_option("--point", *pt)->required();
      c->callback([&action, f, pt] {
        action = [f, pt] { return carnot_cli::run_osc_algebra(*f, *pt); };
      });
    }
  }
  // pipeline
  {
    auto* c = app.add_subcommand("pipeline", "chained demo run from a TOML config");
    auto p = std::make_shared<std::string>();
    c->add_option("config", *p, "pipeline TOML file")->required();
    c->callback([&action, p] { action = [p] { return carnot_cli::run_pipeline(*p); }; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return carnot_cli::finish(action(), out_path);
  } catch (const carnot::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
