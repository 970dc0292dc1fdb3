// Command-line front end: expansion, Hecke checks, Shimura lifts, and the
// sign/Sato-Tate/density experiments. See README.md for file formats and
// exit codes.
#include <CLI11.hpp>
#include <iostream>

#include "bkv/cli.hpp"
#include "bkv/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact q-expansions, Shimura lifts, and sign statistics"};
  app.require_subcommand(1);

  bkv::RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--form", cfg.form,
                    "catalog label (delta, kz13_2) or coefficient file path");
    return sub;
  };

  auto* expand = add_common(app.add_subcommand(
      "expand", "write a coefficient file for a form"));
  expand->add_option("--prec", cfg.prec, "number of coefficients");
  expand->add_flag("--negate", cfg.negate, "negate the form");
  expand->add_option("--out", cfg.out, "output path");

  auto* hecke = add_common(app.add_subcommand(
      "hecke", "apply the parity-appropriate Hecke operator and report the "
               "eigenvalue check"));
  hecke->add_option("--p", cfg.hecke_p, "Hecke prime");
  hecke->add_option("--prec", cfg.prec, "working precision (default by parity)");

  auto* lift = add_common(app.add_subcommand(
      "lift", "Shimura lift with a small-index validation summary"));
  auto add_t = [&](CLI::App* sub) {
    sub->add_option("--t", cfg.t, "squarefree lift index")
        ->each([&](const std::string&) { cfg.t_set = true; });
  };
  add_t(lift);
  lift->add_option("--prec", cfg.prec, "lift precision n_max (default 100)");
  lift->add_flag("--negate", cfg.negate, "negate the source first");
  lift->add_option("--out", cfg.out, "output path");

  auto* signs = add_common(app.add_subcommand(
      "signs", "sign counts of a(t p^2) over primes (or a(t n^2) over all n)"));
  add_t(signs);
  signs->add_option("--x-max", cfg.x_max, "classify up to this bound");
  signs->add_option("--mode", cfg.mode, "primes | all");
  signs->add_option("--checkpoints", cfg.checkpoints, "comma-separated grid")
      ->delimiter(',');
  signs->add_flag("--negate", cfg.negate, "negate the source first");
  signs->add_option("--out", cfg.out, "CSV output path");

  auto* satotate = add_common(app.add_subcommand(
      "satotate", "discrepancy of normalized Hecke angles vs the semicircle "
                  "measure, with a power-law fit"));
  add_t(satotate);
  satotate->add_option("--x-max", cfg.x_max, "primes up to this bound");
  satotate
      ->add_option("--checkpoints", cfg.checkpoints, "comma-separated grid")
      ->delimiter(',');
  satotate->add_flag("--negate", cfg.negate, "negate the source first");
  satotate->add_option("--out", cfg.out, "CSV output path");

  auto* density = add_common(app.add_subcommand(
      "density", "Dedekind-Dirichlet estimates and the prime-set regularity "
                 "diagnostic"));
  add_t(density);
  density->add_option("--n-max", cfg.n_max, "series range");
  density->add_option("--x-max", cfg.x_max,
                      "prime range for the regularity diagnostic");
  density->add_option("--z", cfg.z_grid, "decreasing z grid (> 1)")
      ->delimiter(',');
  density
      ->add_option("--checkpoints", cfg.checkpoints, "comma-separated grid")
      ->delimiter(',');
  density->add_option("--set", cfg.dd_set, "nonzero | pos | neg");
  density->add_flag("--negate", cfg.negate, "negate the source first");
  density->add_option("--out", cfg.out, "output prefix (_dd.csv, _reg.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "bkv-error: invalid-argument: " << e.what() << "\n";
    return bkv::exit_code(bkv::ErrorClass::invalid_argument);
  }

  for (auto* sub :
       {expand, hecke, lift, signs, satotate, density})
    if (app.got_subcommand(sub)) cfg.command = sub->get_name();

  try {
    bkv::run_command(cfg);
  } catch (const bkv::Error& e) {
    std::cerr << "bkv-error: " << bkv::to_string(e.error_class()) << ": "
              << e.what() << "\n";
    return bkv::exit_code(e.error_class());
  } catch (const std::exception& e) {
    std::cerr << "bkv-error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
