// Copyright 2026 The bosonmon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOSONMON_GATES_H
#define BOSONMON_GATES_H

#include <Eigen/Dense>
#include <vector>

#include "bosonmon/rng.h"
#include "bosonmon/sector_basis.h"

namespace bosonmon {

enum class GateMode {
    BSFP,  ///< beam-splitter phase fixed to zero
    BSRP,  ///< beam-splitter phase drawn uniformly per gate
};

/// Where on-site interaction gates go within a layer.
enum class SnapPlacement {
    Brick,     ///< on both modes of every beam splitter, right after it
    AllModes,  ///< on every mode, after all beam splitters of the layer
};

/// exp[i theta (e^{i phi} a_site^dag a_{site+1} + h.c.)] on modes (site, site+1). Sites are 0-based.
struct BeamSplitterSpec {
    int site;
    double theta;
    double phi;
};

/// exp[-i U n^2] on one mode.
struct SnapSpec {
    int site;
    double strength;
};

/// One brick layer. Layers are numbered from 1: odd layers pair (0,1),(2,3),..,
/// even layers pair (1,2),(3,4),.. with open boundaries.
struct LayerSchedule {
    int layer_index = 0;
    GateMode gate_mode = GateMode::BSFP;
    std::vector<BeamSplitterSpec> gates;
    std::vector<SnapSpec> snaps;
    SnapPlacement placement = SnapPlacement::Brick;
};

using BlockMatrix = Eigen::MatrixXcd;

/// The (s+1)x(s+1) restriction of the beam splitter to pair total s, in the basis
/// |s,0>, |s-1,1>, .., |0,s>.
BlockMatrix two_mode_block(int s, double theta, double phi);

/// Applies one beam splitter in place. Throws DomainError for a bad site.
void apply_beam_splitter(PureState &state, const BeamSplitterSpec &gate);

/// Applies exp[-i U n_site^2] in place. Throws DomainError for a bad site.
void apply_snap(PureState &state, const SnapSpec &gate);

/// Applies every gate of a layer in its documented order.
void apply_layer(PureState &state, const LayerSchedule &layer);

/// Mode pairs touched in a layer: left sites of the brick pattern for `layer_index`.
std::vector<int> brick_sites(int layer_index, int modes);

/// Draws one layer. theta ~ U[0, 2pi) per gate, then phi ~ U[0, 2pi) if BSRP
/// (phi = 0 for BSFP). With `with_snap`, strength-`strength` SNAP gates are
/// attached according to `placement`. Throws DomainError if modes < 2.
LayerSchedule sample_layer(
    Rng &rng,
    int layer_index,
    int modes,
    GateMode gate_mode,
    double strength,
    bool with_snap,
    SnapPlacement placement = SnapPlacement::Brick);

}  // namespace bosonmon

#endif
