#include <CLI11.hpp>

#include <iostream>
#include <locale>

#include "billiards/common.hpp"
#include "commands.hpp"

namespace app = billiards::app;

int main(int argc, char** argv) {
  std::locale::global(std::locale::classic());

  CLI::App cli{"Projective billiards: caustic polynomials, orbit traces, reflective polygons, "
               "and invariance checks"};
  cli.require_subcommand(1);

  auto cfg = std::make_shared<app::AppConfig>();
  cli.add_option("--tol-geometry", cfg->tol_geometry, "On-boundary / incidence tolerance")
      ->check(CLI::PositiveNumber);
  cli.add_option("--tol-closure", cfg->tol_closure, "Orbit periodicity tolerance")
      ->check(CLI::PositiveNumber);
  cli.add_option("--tol-root-dedup", cfg->tol_root_dedup, "Relative root clustering distance")
      ->check(CLI::PositiveNumber);
  cli.add_option("--seed", cfg->seed, "Seed for sampled sweeps");
  cli.add_option("-o,--out", cfg->out_flag,
                 "Output directory (default: $BILLIARDS_OUT_DIR, else the working directory)");
  cli.add_option("--format", cfg->format_list, "Output formats to write (csv, json, svg)")
      ->delimiter(',');

  int rc = app::exit_ok;
  auto wrap = [&rc, cfg](auto&& body) {
    // Input problems exit 2; anything the computation itself throws exits 3.
    try {
      cfg->resolve();
      rc = body();
    } catch (const app::input_error& e) {
      std::cerr << "error: " << e.what() << "\n";
      rc = app::exit_input;
    } catch (const billiards::error& e) {
      std::cerr << "error: " << e.what() << "\n";
      rc = app::exit_numerical;
    }
  };

  {
    auto opt = std::make_shared<app::CausticsOptions>();
    CLI::App* sub = cli.add_subcommand(
        "caustics", "Exact conic-caustic polynomial, roots, classes, closure checks");
    sub->fallthrough();
    sub->add_option("-n", opt->n_list, "Orbit period(s) n >= 3")->required()->delimiter(',');
    sub->add_option("-a", opt->a, "Squared semi-axis a (rational p/q)");
    sub->add_option("-b", opt->b, "Squared semi-axis b (rational p/q)");
    sub->add_flag("--check-poncelet", opt->check_poncelet,
                  "Run closure tests for every real non-excluded root");
    sub->add_flag("--closed-form", opt->closed_form,
                  "Compare against the closed-form roots (n = 3, 4)");
    sub->add_option("--starts", opt->starts, "Start points per closure run")
        ->check(CLI::PositiveNumber);
    sub->callback([opt, cfg, &rc, &wrap] { wrap([&] { return app::run_caustics(*opt, *cfg); }); });
  }
  {
    auto opt = std::make_shared<app::OrbitOptions>();
    CLI::App* sub = cli.add_subcommand("orbit", "Trace a billiard orbit from a scene file");
    sub->fallthrough();
    sub->add_option("scene", opt->scene_path, "Scene JSON file")->required();
    sub->add_option("--start", opt->start, "Boundary start point \"x,y[,z]\"");
    sub->add_option("--theta", opt->theta, "Boundary start angle (ellipse/quadric scenes)");
    sub->add_option("--phi", opt->phi, "Start latitude (3D quadric scenes)");
    sub->add_option("--dir", opt->dir, "Initial direction \"dx,dy[,dz]\"")->required();
    sub->add_option("--steps", opt->steps, "Number of bounces")->check(CLI::PositiveNumber);
    sub->callback([opt, cfg, &rc, &wrap, sub] {
      opt->has_theta = sub->count("--theta") > 0;
      opt->has_phi = sub->count("--phi") > 0;
      wrap([&] { return app::run_orbit(*opt, *cfg); });
    });
  }
  {
    auto opt = std::make_shared<app::PolygonOptions>();
    CLI::App* sub =
        cli.add_subcommand("polygon", "Reflectivity sweep over a framed polygon construction");
    sub->fallthrough();
    sub->add_option("kind", opt->kind,
                    "right-spherical | cp-quadrilateral | cp-regular-2m | cp-odd-n")
        ->required();
    sub->add_option("--samples", opt->samples, "Random starting chords")->check(CLI::PositiveNumber);
    sub->add_option("--m", opt->m, "Half vertex count for cp-regular-2m");
    sub->add_option("--n", opt->n, "Vertex count for cp-odd-n (odd)");
    sub->callback([opt, cfg, &rc, &wrap] { wrap([&] { return app::run_polygon(*opt, *cfg); }); });
  }
  {
    auto opt = std::make_shared<app::CircumcentersOptions>();
    CLI::App* sub = cli.add_subcommand(
        "circumcenters", "Circumcenter locus of the triangle-orbit family of an ellipse");
    sub->fallthrough();
    sub->add_option("-a", opt->a, "Squared semi-axis a");
    sub->add_option("-b", opt->b, "Squared semi-axis b");
    sub->add_option("-N", opt->orbits, "Number of triangle orbits")->check(CLI::PositiveNumber);
    sub->callback(
        [opt, cfg, &rc, &wrap] { wrap([&] { return app::run_circumcenters(*opt, *cfg); }); });
  }
  {
    auto opt = std::make_shared<app::ChaslesOptions>();
    CLI::App* sub = cli.add_subcommand(
        "chasles", "Confocal tangency-parameter invariance along a (pseudo-)Euclidean orbit");
    sub->fallthrough();
    sub->add_option("--signature", opt->signature, "Metric signature \"k,l\"");
    sub->add_option("-a", opt->a, "Squared semi-axis a (2D)");
    sub->add_option("-b", opt->b, "Squared semi-axis b (2D)");
    sub->add_option("--axes", opt->axes, "Squared semi-axes \"a,b,c\" (overrides -a/-b)");
    sub->add_option("--bounces", opt->bounces, "Number of bounces")->check(CLI::PositiveNumber);
    sub->add_option("--theta0", opt->theta0, "Start angle of the first chord point");
    sub->add_option("--theta1", opt->theta1, "Start angle of the second chord point");
    sub->add_option("--phi0", opt->phi0, "Start latitude of the first chord point (3D)");
    sub->add_option("--phi1", opt->phi1, "Start latitude of the second chord point (3D)");
    sub->callback([opt, cfg, &rc, &wrap] { wrap([&] { return app::run_chasles(*opt, *cfg); }); });
  }
  {
    auto opt = std::make_shared<app::PermittedOptions>();
    CLI::App* sub = cli.add_subcommand(
        "permitted", "Admitted tangent hyperplanes of a framed ellipsoid, with confocal checks");
    sub->fallthrough();
    sub->add_option("--ellipsoid", opt->ellipsoid, "Squared semi-axes \"a,b,c\"");
    sub->add_option("--samples", opt->samples, "Random (point, direction) samples")
        ->check(CLI::PositiveNumber);
    sub->add_option("--ratio", opt->ratio, "Tangential weight of the frame direction");
    sub->callback([opt, cfg, &rc, &wrap] { wrap([&] { return app::run_permitted(*opt, *cfg); }); });
  }

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = cli.exit(e);
    return code == 0 ? app::exit_ok : app::exit_input;
  }

  return rc;
}
