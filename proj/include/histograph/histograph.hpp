#ifndef HISTOGRAPH_HISTOGRAPH_HPP
#define HISTOGRAPH_HISTOGRAPH_HPP

#include "histograph/isi_ingest.hpp"
#include "histograph/citation_network.hpp"
#include "histograph/rankings.hpp"
#include "histograph/linkage_analysis.hpp"
#include "histograph/collection_qc.hpp"
#include "histograph/historiograph.hpp"
#include "histograph/report.hpp"

#endif  // HISTOGRAPH_HISTOGRAPH_HPP
