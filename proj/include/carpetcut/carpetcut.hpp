#pragma once

#include "carpetcut/adjacency.hpp"
#include "carpetcut/core.hpp"
#include "carpetcut/decider.hpp"
#include "carpetcut/error.hpp"
#include "carpetcut/fragility.hpp"
#include "carpetcut/hata.hpp"
#include "carpetcut/io.hpp"
#include "carpetcut/presets.hpp"
#include "carpetcut/radix.hpp"
#include "carpetcut/window.hpp"
