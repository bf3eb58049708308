#include "kerrcat.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "kerrcat/calibration.hpp"
#include "kerrcat/dynamics.hpp"
#include "kerrcat/error.hpp"
#include "kerrcat/fock.hpp"
#include "kerrcat/phasespace.hpp"
#include "kerrcat/semiclassical.hpp"
#include "kerrcat/spectra.hpp"
#include "kerrcat/sweep.hpp"
#include "kerrcat/wigner.hpp"

using namespace kerrcat;

struct kc_eigensystem {
  spectra::EigenSystem es;
};

struct kc_wigner {
  WignerGrid grid;
};

struct kc_trajectory {
  dynamics::Trajectory tr;
};

struct kc_table {
  SweepResult table;
};

namespace {

thread_local std::string last_error;

kc_status set_error(kc_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class Body>
kc_status guarded(Body&& body) {
  try {
    last_error.clear();
    body();
    return KC_OK;
  } catch (const Error& e) {
    return set_error(static_cast<kc_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(KC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(KC_ERR_INTERNAL, e.what());
  }
}

void need(const void* p, const char* name) {
  require(p != nullptr, ErrorCode::InvalidArgument, std::string(name) + " must not be null");
}

HamiltonianParams to_params(const kc_params* p) {
  need(p, "params");
  HamiltonianParams h;
  h.delta = p->delta;
  h.kerr = p->kerr;
  h.eps2 = p->eps2;
  h.eps4 = p->eps4;
  h.dim = p->dim;
  h.validate();
  return h;
}

kc_phase to_phase(semiclassical::PhaseRegion r) {
  switch (r) {
    case semiclassical::PhaseRegion::SingleNode: return KC_PHASE_SINGLE_NODE;
    case semiclassical::PhaseRegion::DoubleNode: return KC_PHASE_DOUBLE_NODE;
    case semiclassical::PhaseRegion::TripleNode: return KC_PHASE_TRIPLE_NODE;
  }
  return KC_PHASE_SINGLE_NODE;
}

dynamics::LindbladConfig to_config(const kc_lindblad* c) {
  need(c, "config");
  dynamics::LindbladConfig cfg;
  cfg.params = to_params(&c->params);
  cfg.kappa = c->kappa;
  cfg.n_th = c->n_th;
  cfg.t_final = c->t_final;
  cfg.dt = c->dt;
  cfg.sample_dt = c->sample_dt;
  cfg.well_pairs = c->well_pairs;
  switch (c->initial) {
    case KC_INIT_RIGHT_WELL: cfg.initial.kind = dynamics::InitialKind::RightWell; break;
    case KC_INIT_LEFT_WELL: cfg.initial.kind = dynamics::InitialKind::LeftWell; break;
    case KC_INIT_VACUUM: cfg.initial.kind = dynamics::InitialKind::Vacuum; break;
    case KC_INIT_FOCK: cfg.initial.kind = dynamics::InitialKind::Fock; break;
    default: fail(ErrorCode::InvalidArgument, "unknown initial state");
  }
  cfg.initial.fock_n = c->fock_n;
  switch (c->method) {
    case KC_METHOD_AUTO: cfg.method = dynamics::Method::Auto; break;
    case KC_METHOD_RK4: cfg.method = dynamics::Method::Rk4; break;
    case KC_METHOD_PROPAGATOR: cfg.method = dynamics::Method::Propagator; break;
    default: fail(ErrorCode::InvalidArgument, "unknown integration method");
  }
  cfg.validate();
  return cfg;
}

nlohmann::ordered_json parse_metadata(const char* text) {
  if (text == nullptr || *text == '\0') return nlohmann::ordered_json::object();
  auto j = nlohmann::ordered_json::parse(text, nullptr, false);
  require(!j.is_discarded() && j.is_object(), ErrorCode::InvalidArgument, "metadata must be a JSON object");
  return j;
}

OutputFormat to_format(const char* format) {
  need(format, "format");
  return parse_output_format(format);
}

}  // namespace

extern "C" {

const char* kc_version(void) { return "0.1.0"; }

const char* kc_last_error(void) { return last_error.c_str(); }

const char* kc_status_name(kc_status status) {
  if (status == KC_OK) return "ok";
  return to_string(static_cast<ErrorCode>(status));
}

kc_params kc_params_default(void) { return kc_params{0.0, 1.0, 0.0, 0.0, 0}; }

kc_status kc_resolved_dim(const kc_params* params, int* dim) {
  return guarded([&] {
    need(dim, "dim");
    *dim = to_params(params).resolved_dim();
  });
}

kc_status kc_eigensystem_new(const kc_params* params, kc_eigensystem** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    auto h = to_params(params);
    *out = new kc_eigensystem{spectra::solve(h)};
  });
}

void kc_eigensystem_free(kc_eigensystem* es) { delete es; }

int kc_eigensystem_dim(const kc_eigensystem* es) { return es ? es->es.dim() : 0; }

kc_status kc_eigensystem_levels(const kc_eigensystem* es, int count, double* values, int* parities) {
  return guarded([&] {
    need(es, "eigensystem");
    require(count >= 0 && count <= es->es.dim(), ErrorCode::InvalidArgument, "level count out of range");
    for (int i = 0; i < count; ++i) {
      if (values) values[i] = es->es.eigenvalues(i);
      if (parities) parities[i] = es->es.parities[i];
    }
  });
}

kc_status kc_eigensystem_vector(const kc_eigensystem* es, int index, double* re, double* im) {
  return guarded([&] {
    need(es, "eigensystem");
    require(index >= 0 && index < es->es.dim(), ErrorCode::InvalidArgument, "eigenvector index out of range");
    const StateVector v = es->es.vector(index);
    for (int i = 0; i < v.size(); ++i) {
      if (re) re[i] = v(i).real();
      if (im) im[i] = v(i).imag();
    }
  });
}

kc_status kc_tunnel_splitting(const kc_params* params, double* signed_splitting) {
  return guarded([&] {
    need(signed_splitting, "out");
    *signed_splitting = spectra::tunnel_splitting(to_params(params)).delta_e;
  });
}

kc_status kc_splitting_zeros(const kc_params* base, const double* grid, size_t grid_size, unsigned threads,
                             double* values, double* zeros, size_t capacity, size_t* count) {
  return guarded([&] {
    need(grid, "grid");
    need(count, "count");
    require(capacity == 0 || zeros != nullptr, ErrorCode::InvalidArgument, "zeros must not be null");
    auto p = to_params(base);
    std::vector<double> g(grid, grid + grid_size);
    auto sweep = p.eps4 != 0.0 ? spectra::quartic_drive_spectrum(p, g, threads) : spectra::splitting_sweep(p, g, threads);
    if (values) {
      auto col = sweep.table.column_values("de_signed");
      std::copy(col.begin(), col.end(), values);
    }
    *count = sweep.zeros.size();
    for (size_t i = 0; i < sweep.zeros.size() && i < capacity; ++i) zeros[i] = sweep.zeros[i];
  });
}

kc_status kc_degeneracy_check(int m, double eps2, double kerr, int dim, kc_degeneracy_report* out) {
  return guarded([&] {
    need(out, "out");
    auto r = spectra::degeneracy_check(m, eps2, kerr, dim);
    *out = kc_degeneracy_report{r.m, r.expected_pairs, r.degenerate_pairs, r.max_intra_gap, r.next_gap, r.ok ? 1 : 0};
  });
}

kc_status kc_exact_block(int m, double eps2, double kerr, int dim, double* values, double* offset,
                         double* max_mismatch) {
  return guarded([&] {
    auto b = spectra::exact_block_eigenvalues(m, eps2, kerr, dim);
    if (values)
      for (int i = 0; i < b.block_eigenvalues.size(); ++i) values[i] = b.block_eigenvalues(i);
    if (offset) *offset = b.offset;
    if (max_mismatch) *max_mismatch = b.max_mismatch;
  });
}

kc_status kc_first_order_crossing_amplitude(int n, double eps2, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = spectra::first_order_crossing_amplitude(n, eps2);
  });
}

kc_status kc_second_order_energy(int level, const kc_params* params, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = spectra::second_order_energy(level, to_params(params));
  });
}

kc_status kc_classify_phase(double delta, double eps2, kc_phase* out) {
  return guarded([&] {
    need(out, "out");
    *out = to_phase(semiclassical::classify_phase(delta, eps2));
  });
}

const char* kc_phase_name(kc_phase phase) {
  switch (phase) {
    case KC_PHASE_SINGLE_NODE: return semiclassical::to_string(semiclassical::PhaseRegion::SingleNode);
    case KC_PHASE_DOUBLE_NODE: return semiclassical::to_string(semiclassical::PhaseRegion::DoubleNode);
    case KC_PHASE_TRIPLE_NODE: return semiclassical::to_string(semiclassical::PhaseRegion::TripleNode);
  }
  return "unknown";
}

kc_status kc_metapotential_geometry(double delta, double eps2, double kerr, kc_geometry* out) {
  return guarded([&] {
    need(out, "out");
    auto g = semiclassical::geometry(delta, eps2, kerr);
    *out = kc_geometry{to_phase(g.region), g.node_distance, g.saddle_distance, g.node_depth,
                       g.saddle_depth,     g.barrier_height, g.separatrix_area};
  });
}

kc_status kc_ebk_count(double delta, double eps2, double kerr, kc_ebk* out) {
  return guarded([&] {
    need(out, "out");
    auto e = semiclassical::ebk_bound_state_count(delta, eps2, kerr);
    *out = kc_ebk{to_phase(e.region), e.n, e.n_area, e.excited_count, e.excited_count_area,
                  e.in_well_pairs, e.boundary ? 1 : 0, e.n_double_branch, e.n_triple_branch};
  });
}

kc_status kc_wkb_splitting(double delta, double eps2, double kerr, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = semiclassical::wkb_splitting(delta, eps2, kerr);
  });
}

kc_status kc_kerr_lamb_shift(double delta, double kerr, double* number_coefficient, double* quartic_coefficient,
                             double* constant) {
  return guarded([&] {
    auto op = phasespace::kerr_lamb_shift_check(delta, kerr);
    if (number_coefficient) *number_coefficient = op.coefficient(1, 1).to_complex().real();
    if (quartic_coefficient) *quartic_coefficient = op.coefficient(2, 2).to_complex().real();
    if (constant) *constant = op.coefficient(0, 0).to_complex().real();
  });
}

kc_status kc_fokker_planck_symbols(double kappa, double n_th, int max_degree, kc_fokker_planck* out) {
  return guarded([&] {
    need(out, "out");
    auto r = phasespace::lindblad_phase_space_rhs_symbols(kappa, n_th, max_degree);
    *out = kc_fokker_planck{r.drift,
                            r.diffusion_complex,
                            r.diffusion_quadrature,
                            r.diffusion_quadrature_lambda2,
                            r.matches_all_monomials ? 1 : 0,
                            r.monomials_checked,
                            r.drift_independent_of_n_th ? 1 : 0,
                            r.hamiltonian_part_odd_only ? 1 : 0};
  });
}

kc_status kc_wigner_new(const kc_params* params, kc_state_kind kind, int index, int nx, int np, double half_width,
                        unsigned threads, kc_wigner** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    auto es = spectra::solve(to_params(params));
    StateVector state;
    if (kind == KC_STATE_EIGEN) {
      require(index >= 0 && index < es.dim(), ErrorCode::InvalidArgument, "eigenstate index out of range");
      state = es.vector(index);
    } else if (kind == KC_STATE_RIGHT || kind == KC_STATE_LEFT) {
      auto pair = spectra::localized_pair(es, index);
      state = kind == KC_STATE_RIGHT ? pair.right : pair.left;
    } else {
      fail(ErrorCode::InvalidArgument, "unknown state kind");
    }
    WignerGridSpec spec;
    spec.nx = nx;
    spec.np = np;
    spec.half_width = half_width > 0.0 ? half_width : 0.0;
    *out = new kc_wigner{phasespace::wigner_function(state, spec, threads)};
  });
}

void kc_wigner_free(kc_wigner* w) { delete w; }

kc_status kc_wigner_stats(const kc_wigner* w, double* normalization, double* purity, double* min_value,
                          double* max_value) {
  return guarded([&] {
    need(w, "wigner");
    if (normalization) *normalization = w->grid.normalization();
    if (purity) *purity = w->grid.purity_integral();
    if (min_value) *min_value = w->grid.min_value();
    if (max_value) *max_value = w->grid.max_value();
  });
}

kc_status kc_wigner_value(const kc_wigner* w, int ix, int ip, double* x, double* p, double* value) {
  return guarded([&] {
    need(w, "wigner");
    require(ix >= 0 && ix < static_cast<int>(w->grid.x.size()) && ip >= 0 && ip < static_cast<int>(w->grid.p.size()),
            ErrorCode::InvalidArgument, "grid index out of range");
    if (x) *x = w->grid.x[ix];
    if (p) *p = w->grid.p[ip];
    if (value) *value = w->grid.values(ix, ip);
  });
}

kc_status kc_wigner_write(const kc_wigner* w, const char* path, const char* format, const char* metadata_json) {
  return guarded([&] {
    need(w, "wigner");
    need(path, "path");
    auto meta = parse_metadata(metadata_json);
    if (to_format(format) == OutputFormat::Csv)
      write_text_file(path, w->grid.to_csv());
    else
      write_text_file(path, w->grid.to_json(meta).dump(2) + "\n");
  });
}

kc_lindblad kc_lindblad_default(void) {
  kc_lindblad c{};
  c.params = kc_params_default();
  c.t_final = 1.0;
  c.initial = KC_INIT_RIGHT_WELL;
  c.method = KC_METHOD_AUTO;
  return c;
}

kc_status kc_tx_lifetime(const kc_lindblad* cfg, kc_tx_result* out) {
  return guarded([&] {
    need(out, "out");
    auto r = dynamics::tx_lifetime(to_config(cfg));
    *out = kc_tx_result{r.t_x, r.lower_bound ? 1 : 0, r.fit_points, r.s_final, r.t_end};
  });
}

kc_status kc_evolve(const kc_lindblad* cfg, kc_trajectory** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    *out = new kc_trajectory{dynamics::evolve(to_config(cfg))};
  });
}

void kc_trajectory_free(kc_trajectory* tr) { delete tr; }

size_t kc_trajectory_size(const kc_trajectory* tr) { return tr ? tr->tr.size() : 0; }

kc_status kc_trajectory_column(const kc_trajectory* tr, const char* column, double* out) {
  return guarded([&] {
    need(tr, "trajectory");
    need(column, "column");
    need(out, "out");
    const auto& t = tr->tr;
    const std::vector<double>* src = nullptr;
    const std::string name = column;
    if (name == "t") src = &t.t;
    else if (name == "s") src = &t.s;
    else if (name == "tr") src = &t.trace;
    else if (name == "purity") src = &t.purity;
    else if (name == "n") src = &t.n;
    else if (name == "x") src = &t.x;
    else if (name == "energy") src = &t.energy;
    else if (name == "min_eigenvalue") src = &t.min_eigenvalue;
    else fail(ErrorCode::InvalidArgument, "unknown trajectory column '" + name + "'");
    std::copy(src->begin(), src->end(), out);
  });
}

kc_status kc_trajectory_write(const kc_trajectory* tr, const char* path, const char* format,
                              const char* metadata_json) {
  return guarded([&] {
    need(tr, "trajectory");
    need(path, "path");
    auto meta = parse_metadata(metadata_json);
    if (to_format(format) == OutputFormat::Csv)
      write_text_file(path, tr->tr.to_csv());
    else
      tr->tr.to_table().write(path, OutputFormat::Json, meta);
  });
}

kc_status kc_table_new(const char* const* columns, int column_count, kc_table** out) {
  return guarded([&] {
    need(out, "out");
    need(columns, "columns");
    *out = nullptr;
    std::vector<std::string> names;
    for (int i = 0; i < column_count; ++i) {
      need(columns[i], "column name");
      names.emplace_back(columns[i]);
    }
    *out = new kc_table{SweepResult(std::move(names))};
  });
}

void kc_table_free(kc_table* table) { delete table; }

kc_status kc_table_add_row(kc_table* table, const double* values, const char* const* texts, int error_code) {
  return guarded([&] {
    need(table, "table");
    const auto n = table->table.columns().size();
    std::vector<Cell> row;
    row.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      if (texts && texts[i]) {
        row.emplace_back(std::string(texts[i]));
      } else {
        need(values, "values");
        row.emplace_back(values[i]);
      }
    }
    table->table.add_row(std::move(row), error_code);
  });
}

size_t kc_table_rows(const kc_table* table) { return table ? table->table.rows() : 0; }

kc_status kc_table_write(const kc_table* table, const char* path, const char* format, const char* metadata_json) {
  return guarded([&] {
    need(table, "table");
    need(path, "path");
    table->table.write(path, to_format(format), parse_metadata(metadata_json));
  });
}

kc_status kc_rabi_map(const kc_lindblad* base, const char* axis, const double* values, size_t value_count,
                      const double* times, size_t time_count, unsigned threads, kc_table** cells, kc_table** fits) {
  return guarded([&] {
    need(axis, "axis");
    need(values, "values");
    need(times, "times");
    need(cells, "cells");
    need(fits, "fits");
    *cells = nullptr;
    *fits = nullptr;
    auto map = dynamics::rabi_map(to_config(base), axis, std::vector<double>(values, values + value_count),
                                  std::vector<double>(times, times + time_count), threads);
    *cells = new kc_table{std::move(map.cells)};
    *fits = new kc_table{std::move(map.fits)};
  });
}

kc_status kc_calibrate(double omega_x, double eps_x, double kerr, kc_calibration* out) {
  return guarded([&] {
    need(out, "out");
    auto c = calibrate(omega_x, eps_x, kerr);
    *out = kc_calibration{c.alpha0_sq, c.eps2};
  });
}

}  // extern "C"
