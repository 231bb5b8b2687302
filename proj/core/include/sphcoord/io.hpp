#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "sphcoord/cohomology.hpp"
#include "sphcoord/complex.hpp"
#include "sphcoord/mapping.hpp"
#include "sphcoord/pipeline.hpp"
#include "sphcoord/postprocess.hpp"
#include "sphcoord/synth.hpp"

namespace sphcoord {

/// Numbers in every text output carry 12 significant digits.
std::string format_number(double v);

/// Numeric CSV; a first row that does not parse as numbers is taken as a
/// header and skipped. Throws InputError on ragged or non-numeric rows.
Eigen::MatrixXd read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);

PointCloud read_point_cloud(const std::string& path);
DistanceMatrix read_distance_matrix(const std::string& path);

/// JSON list of {"vertices": [...], "value": x}.
FilteredComplex read_complex_json(const std::string& path);

/// Rows (dimension, birth, death) with "inf" for essential bars.
void write_barcode_csv(const std::string& path, const std::vector<Barcode>& barcodes);
/// One entry per bar with its representative as {"a,b,c": coefficient}.
void write_cocycles_json(const std::string& path, const std::vector<Barcode>& barcodes);

/// (vertex_id, azimuth, elevation) or (vertex_id, angle).
void write_coordinates_csv(const std::string& path, const CoordinateTable& t);
CoordinateTable read_coordinates_csv(const std::string& path);

/// Dataset files: <prefix>.csv, <prefix>_truth.csv and, when labelled,
/// <prefix>_labels.csv (vertex_id, label).
void write_dataset(const std::string& prefix, const Dataset& d);
std::vector<int> read_labels_csv(const std::string& path);

void write_trace_csv(const std::string& path, const std::vector<double>& trace);
void write_run_report_json(const std::string& path, const RunReport& report, const PipelineResult* pipeline = nullptr);

/// Checkpoint of a spherical map with the energy it was minimized for.
/// Values are written with round-trip precision.
void write_state_json(const std::string& path, const SphericalMapState& m, const EnergyConfig& e);
SphericalMapState read_state_json(const std::string& path, EnergyConfig* energy = nullptr);

void write_metrics_json(const std::string& path, const RecoveryMetrics& metrics, const std::string& aligned_path);

}  // namespace sphcoord
