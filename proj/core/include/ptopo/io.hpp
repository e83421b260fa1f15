#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptopo/critical_points.hpp"
#include "ptopo/field.hpp"
#include "ptopo/lifetime.hpp"
#include "ptopo/metrics.hpp"
#include "ptopo/persistence.hpp"

namespace ptopo {

enum class Dtype { U8, I16, U16, F32, F64 };

Dtype parse_dtype(const std::string& s);
const char* to_string(Dtype t);
std::size_t dtype_size(Dtype t);

/// Raw volumes: little-endian, x-fastest, vertex counts per axis.
struct VolumeHeader {
  Coords samples{};
  Dtype dtype = Dtype::F64;
};

ScalarField read_raw_volume(const std::string& path, const VolumeHeader& header);
void write_raw_volume(const std::string& path, const ScalarField& field,
                      Dtype dtype = Dtype::F64);

/// Optional JSON sidecar (<volume>.json) carrying dims and dtype.
std::optional<VolumeHeader> read_sidecar(const std::string& volume_path);
void write_sidecar(const std::string& volume_path, const VolumeHeader& header);

enum class DiagramFormat { Csv, Json };

/// Stable on-disk order: class, then birth value, then grid-0 index.
/// Values are written with 17 significant digits so doubles round-trip.
void write_diagram(const PersistenceDiagram& diagram, const Coords& samples,
                   const std::string& path,
                   DiagramFormat format = DiagramFormat::Csv);
PersistenceDiagram read_diagram(const std::string& path,
                                const Coords& samples,
                                DiagramFormat format = DiagramFormat::Csv);

void write_critical_points(const ProgressiveState& state,
                           const std::string& path);

void write_convergence_report(const std::vector<ConvergenceRow>& rows,
                              const std::string& path);

void write_tracks(const std::vector<ExtremumTrack>& tracks,
                  const ScalarField& field, const std::string& path);

}  // namespace ptopo
