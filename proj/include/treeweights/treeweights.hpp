#pragma once

#include "treeweights/error.hpp"
#include "treeweights/io.hpp"
#include "treeweights/multigraph.hpp"
#include "treeweights/partition.hpp"
#include "treeweights/psd.hpp"
#include "treeweights/rational.hpp"
#include "treeweights/sectors.hpp"
