#pragma once

// JSON file formats.
//
// Mesh: {"dimension": n, "vertices": [[x,y,...],...], "cells": [[v0..vn],...]}
//   Lower simplices and boundary flags are derived on load, never stored.
// Cochain: {"degree": k, "values": [...]} in the canonical simplex order.

#include <string>

#include "ymhelix/dec.hpp"
#include "ymhelix/generators.hpp"

namespace ymhelix {

void save_mesh(const Mesh& mesh, const std::string& path);
Mesh load_mesh(const std::string& path);

void save_cochain(const Cochain& c, const std::string& path);
Cochain load_cochain(const SimplicialComplex& cx, const std::string& path);

// Named mesh factory used by the CLI: "box2", "box3", "box4", "annulus",
// "solidtorus", "torus3" (periodic 3-box built by self-gluing).
Mesh make_named_mesh(const std::string& name, int resolution);

}  // namespace ymhelix
