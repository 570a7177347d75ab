#include "dqforge/bench.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "dqforge/cell.hpp"
#include "dqforge/edit_distance.hpp"
#include "dqforge/error.hpp"
#include "dqforge/rng.hpp"

namespace dq {
namespace {

// ---- deterministic sampling helpers (avoid distribution objects so the
// ---- stream is identical across standard library implementations)

std::size_t pick(std::mt19937_64& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Standard normal via polar rejection, truncated to |z| <= zCap.
double truncatedZ(std::mt19937_64& rng, double zCap) {
  for (;;) {
    const double u = 2.0 * unit(rng) - 1.0;
    const double v = 2.0 * unit(rng) - 1.0;
    const double s = u * u + v * v;
    if (s <= 0.0 || s >= 1.0) continue;
    const double z = u * std::sqrt(-2.0 * std::log(s) / s);
    if (std::abs(z) <= zCap) return z;
  }
}

// Exact-count value pool: counts follow the integer weights (largest
// remainder apportionment), then the pool is shuffled. Keeps within-column
// frequency ratios fixed at any table size.
std::vector<int> weightedPool(std::size_t n, const std::vector<int>& weights, std::mt19937_64& rng) {
  int totalWeight = 0;
  for (int w : weights) totalWeight += w;
  std::vector<std::size_t> counts(weights.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = static_cast<double>(n) * weights[i] / totalWeight;
    counts[i] = static_cast<std::size_t>(exact);
    assigned += counts[i];
    remainders.push_back({exact - static_cast<double>(counts[i]), i});
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++counts[remainders[i % remainders.size()].second];

  std::vector<int> pool;
  pool.reserve(n);
  for (std::size_t i = 0; i < weights.size(); ++i) pool.insert(pool.end(), counts[i], static_cast<int>(i));
  for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[pick(rng, i)]);
  return pool;
}

// ---- synthetic schema

const std::vector<std::string>& columnNames() {
  static const std::vector<std::string> kNames = {
      "SalesID",        "ModelID",          "auctioneerID",     "YearMade",
      "MachineHoursCurrentMeter", "SalePrice", "datasource",    "saledate",
      "fiModelDesc",    "fiSecondaryDesc",  "fiProductClassDesc", "ProductGroup",
      "ProductGroupDesc", "state",          "ProductSize",      "UsageBand",
      "Enclosure",      "Forks",            "Pad_Type",         "Motion_Control",
      "Stick",          "Transmission",     "Turbocharged",     "Blade_Extension",
      "Blade_Span",     "Enclosure_Type",   "Engine_Horsepower", "Hydraulics",
      "Pushblock",      "Ripper",           "Scarifier",        "Tip_Control",
      "Tire_Size",      "Coupler",          "Coupler_System",   "Grouser_Tracks",
      "Hydraulics_Flow", "Track_Type",      "Undercarriage_Pad", "Stick_Length",
      "Thumb",          "Pattern_Changer",  "Grouser_Type",     "Backhoe_Mounting",
      "Blade_Type",     "Travel_Controls",  "Differential_Type", "Steering_Controls",
      "Machine_Usage",  "Frame_Hours",      "Blade_Hours",      "Engine_Hours",
      "Odometer_Reading"};
  return kNames;
}

struct Vocab {
  std::vector<std::string> words;
  std::vector<int> weights;  // max/min ratio kept under 2 so that close word
                             // pairs always protect each other
};

const Vocab kGroupCodes = {{"TTT", "TEX", "WL", "SSL", "BL", "MG"}, {}};
const Vocab kGroupDescs = {{"Track Type Tractors", "Track Excavators", "Wheel Loader", "Skid Steer Loaders",
                            "Backhoe Loaders", "Motor Graders"},
                           {}};
const Vocab kEnclosures = {{"EROPS", "OROPS", "EROPS w AC", "None", "EROPS AC"}, {18, 21, 9, 5, 7}};
const Vocab kSecondary = {{"G", "E", "H", "K", "L", "LC", "LGP", "XL", "XLT", "STD", "PLUS", "SUPER"},
                          {5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5}};
const Vocab kClasses = {{"Track Type Tractor Dozer Medium", "Track Type Tractor Dozer Large",
                         "Hydraulic Excavator Track Medium", "Hydraulic Excavator Track Small",
                         "Wheel Loader Medium Lift", "Wheel Loader Compact Lift",
                         "Skid Steer Loader Vertical Lift", "Skid Steer Loader Radial Lift",
                         "Backhoe Loader Standard Depth", "Backhoe Loader Extended Depth",
                         "Motor Grader Articulated Frame", "Motor Grader Rigid Frame"},
                        {}};
const Vocab kStates = {{"Alabama",       "Alaska",       "Arizona",      "Arkansas",      "California",
                        "Colorado",      "Connecticut",  "Delaware",     "Florida",       "Georgia",
                        "Hawaii",        "Idaho",        "Illinois",     "Indiana",       "Iowa",
                        "Kansas",        "Kentucky",     "Louisiana",    "Maine",         "Maryland",
                        "Massachusetts", "Michigan",     "Minnesota",    "Mississippi",   "Missouri",
                        "Montana",       "Nebraska",     "Nevada",       "New Hampshire", "New Jersey",
                        "New Mexico",    "New York",     "North Carolina", "North Dakota", "Ohio",
                        "Oklahoma",      "Oregon",       "Pennsylvania", "Rhode Island",  "South Carolina",
                        "South Dakota",  "Tennessee",    "Texas",        "Utah",          "Vermont",
                        "Virginia",      "Washington",   "West Virginia", "Wisconsin",    "Wyoming",
                        "Unspecified"},
                       {}};
const Vocab kProductSize = {{"Mini", "Compact", "Small", "Medium", "Large"}, {2, 2, 3, 3, 2}};
const Vocab kUsageBand = {{"Low", "Medium", "High"}, {3, 4, 3}};
const Vocab kForks = {{"None or Unspecified", "Yes"}, {3, 2}};
const Vocab kPadType = {{"None or Unspecified", "Street", "Grouser", "Reversible"}, {3, 2, 2, 2}};
const Vocab kMotionControl = {{"None or Unspecified", "No", "Yes"}, {2, 2, 2}};
const Vocab kStick = {{"Standard", "Extended"}, {3, 2}};
const Vocab kTransmission = {{"None or Unspecified", "Powershift", "Standard", "Autoshift", "Hydrostatic",
                              "Direct Drive", "Powershuttle"},
                             {2, 3, 3, 2, 2, 2, 2}};
const Vocab kYesNoNone = {{"None or Unspecified", "Yes", "No"}, {3, 2, 2}};
const Vocab kEnclosureType = {{"None or Unspecified", "High Profile", "Low Profile"}, {4, 3, 3}};
const Vocab kHydraulics = {{"Standard", "Auxiliary", "Base Plus One", "Base Plus Three", "Base Plus Four",
                            "None or Unspecified"},
                           {3, 2, 2, 2, 2, 3}};
const Vocab kYesNone = {{"None or Unspecified", "Yes"}, {3, 2}};
const Vocab kRipper = {{"None or Unspecified", "Yes", "Single Shank", "Multi Shank"}, {3, 2, 2, 2}};
const Vocab kTipControl = {{"None or Unspecified", "Sideshift and Tip", "Tip"}, {3, 2, 2}};
const Vocab kTireSize = {{"None or Unspecified", "23.5", "26.5", "29.5", "20.5", "17.5", "15.5", "13.00", "7.0",
                          "10 inch"},
                         {3, 2, 2, 2, 2, 2, 2, 2, 2, 2}};
const Vocab kCoupler = {{"None or Unspecified", "Manual", "Hydraulic"}, {4, 3, 3}};
const Vocab kHydraulicsFlow = {{"Standard", "High Flow", "None or Unspecified"}, {3, 2, 3}};
const Vocab kTrackType = {{"Steel", "Rubber"}, {3, 2}};
const Vocab kGrouserType = {{"Double", "Triple", "Single"}, {3, 2, 2}};
const Vocab kBladeType = {{"PAT", "Straight", "Semi U", "VPAT", "U", "Angle", "No", "Landfill", "Coal"},
                          {3, 3, 2, 2, 2, 2, 2, 2, 2}};
const Vocab kTravelControls = {{"None or Unspecified", "Finger Tip", "Lever", "Pedal", "Differential Steer"},
                               {3, 2, 2, 2, 2}};
const Vocab kDifferential = {{"Standard", "Limited Slip", "No Spin", "Locking"}, {3, 2, 2, 2}};
const Vocab kSteering = {{"Conventional", "Command Control", "Four Wheel Standard", "Wheel"}, {3, 3, 2, 2}};

const char* kMonths[12] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

constexpr std::size_t kModelCount = 60;

// Per-model attributes: the model determines its descriptor strings, so the
// mined rule base contains always-true model -> property implications.
struct ModelUniverse {
  std::vector<std::string> names;     // mixed letter/digit codes
  std::vector<int> modelIds;
  std::vector<std::size_t> group;     // model -> product group
  std::vector<std::size_t> secondary;
  std::vector<std::size_t> enclosure;
  std::vector<std::size_t> productClass;
};

ModelUniverse makeModels(std::uint64_t seed) {
  ModelUniverse u;
  static const char* prefixes[4] = {"D", "EX", "PC", "WA"};
  static const char* suffixes[5] = {"", "G", "E", "LC", "XL"};
  for (std::size_t m = 0; m < kModelCount; ++m) {
    u.names.push_back(std::string(prefixes[m % 4]) + std::to_string(100 + 7 * m) + suffixes[m % 5]);
    u.modelIds.push_back(static_cast<int>(4000 + 13 * m));
  }
  std::mt19937_64 rng = makeRng(deriveSeed(seed, "bench", "models"));
  std::vector<int> groupPool = weightedPool(kModelCount, {1, 1, 1, 1, 1, 1}, rng);
  std::vector<int> secondaryPool = weightedPool(kModelCount, kSecondary.weights, rng);
  std::vector<int> enclosurePool = weightedPool(kModelCount, kEnclosures.weights, rng);
  std::vector<std::size_t> groupRank(kGroupCodes.words.size(), 0);
  for (std::size_t m = 0; m < kModelCount; ++m) {
    u.group.push_back(static_cast<std::size_t>(groupPool[m]));
    u.secondary.push_back(static_cast<std::size_t>(secondaryPool[m]));
    u.enclosure.push_back(static_cast<std::size_t>(enclosurePool[m]));
    // two classes per group, alternating by rank so the split is exactly even
    u.productClass.push_back(u.group.back() * 2 + (groupRank[u.group.back()]++ % 2));
  }
  return u;
}

// Bounded shapes only: every generator keeps |z| comfortably below 3 so a
// clean column never trips the outlier interval.
double snapTo(double v, double lo, double step) { return lo + std::round((v - lo) / step) * step; }

}  // namespace

std::size_t cleanTableColumns() { return columnNames().size(); }

Table makeCleanTable(std::size_t rows, std::uint64_t seed) {
  const std::size_t n = rows;
  if (n == 0) throw ConfigError("clean table needs at least one row");
  const ModelUniverse models = makeModels(seed);

  // identifiers: SalesID repeats ~8% of the time; the (SalesID, ModelID)
  // pair never repeats
  std::mt19937_64 idRng = makeRng(deriveSeed(seed, "bench", "ids"));
  std::vector<std::int64_t> salesIds(n);
  std::vector<int> modelOfRow(n);
  std::unordered_map<std::int64_t, std::vector<int>> modelsOfSale;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t sid = 1139246 + static_cast<std::int64_t>(i);
    if (i > 0 && unit(idRng) < 0.08) {
      const std::int64_t candidate = salesIds[pick(idRng, i)];
      if (modelsOfSale[candidate].size() < kModelCount) sid = candidate;
    }
    auto& used = modelsOfSale[sid];
    std::size_t m = pick(idRng, kModelCount);
    while (std::find(used.begin(), used.end(), static_cast<int>(m)) != used.end()) m = (m + 1) % kModelCount;
    used.push_back(static_cast<int>(m));
    salesIds[i] = sid;
    modelOfRow[i] = static_cast<int>(m);
  }

  const std::size_t maxBuckets = std::max<std::size_t>(50, n / 50);
  auto buckets = [&](std::size_t wanted) { return std::min(wanted, maxBuckets); };

  // per-column value builders; each column draws from its own stream
  auto colRng = [&](const char* name) { return makeRng(deriveSeed(seed, "bench.column", name)); };

  std::vector<std::vector<Cell>> cols(columnNames().size());
  for (auto& c : cols) c.reserve(n);

  {  // identifier block
    std::mt19937_64 rng = colRng("auctioneerID");
    for (std::size_t i = 0; i < n; ++i) {
      cols[0].push_back(Cell::number(static_cast<double>(salesIds[i])));
      cols[1].push_back(Cell::number(models.modelIds[modelOfRow[i]]));
      cols[2].push_back(Cell::number(static_cast<double>(1 + pick(rng, 27))));
    }
  }
  {  // YearMade: skewed toward recent years, bounded
    std::mt19937_64 rng = colRng("YearMade");
    for (std::size_t i = 0; i < n; ++i) {
      const double u = unit(rng);
      cols[3].push_back(Cell::number(2013.0 - std::floor(48.0 * u * u)));
    }
  }
  {  // MachineHoursCurrentMeter: right-skewed, bounded
    std::mt19937_64 rng = colRng("MachineHoursCurrentMeter");
    const std::size_t b = buckets(300);
    const double step = 40000.0 / static_cast<double>(b);
    for (std::size_t i = 0; i < n; ++i)
      cols[4].push_back(Cell::number(snapTo(40000.0 * std::pow(unit(rng), 1.6), 0.0, step)));
  }
  {  // SalePrice
    std::mt19937_64 rng = colRng("SalePrice");
    const std::size_t b = buckets(400);
    const double step = 140000.0 / static_cast<double>(b);
    for (std::size_t i = 0; i < n; ++i)
      cols[5].push_back(Cell::number(snapTo(5000.0 + 140000.0 * std::pow(unit(rng), 1.6), 5000.0, step)));
  }
  {  // datasource: small set of feed identifiers
    std::mt19937_64 rng = colRng("datasource");
    static const double feeds[5] = {121, 132, 136, 149, 172};
    for (std::size_t i = 0; i < n; ++i) cols[6].push_back(Cell::number(feeds[pick(rng, 5)]));
  }
  {  // saledate: "16-Nov-2006" style
    std::mt19937_64 rng = colRng("saledate");
    for (std::size_t i = 0; i < n; ++i) {
      const int day = 1 + static_cast<int>(pick(rng, 28));
      const char* month = kMonths[pick(rng, 12)];
      const int year = 2004 + static_cast<int>(pick(rng, 8));
      cols[7].push_back(Cell::text(std::to_string(day) + "-" + month + "-" + std::to_string(year)));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {  // model-determined descriptors
    const std::size_t m = static_cast<std::size_t>(modelOfRow[i]);
    cols[8].push_back(Cell::text(models.names[m]));
    cols[9].push_back(Cell::text(kSecondary.words[models.secondary[m]]));
    cols[10].push_back(Cell::text(kClasses.words[models.productClass[m]]));
    cols[11].push_back(Cell::text(kGroupCodes.words[models.group[m]]));
    cols[12].push_back(Cell::text(kGroupDescs.words[models.group[m]]));
    cols[16].push_back(Cell::text(kEnclosures.words[models.enclosure[m]]));
  }

  auto fillVocab = [&](std::size_t col, const Vocab& vocab) {
    std::mt19937_64 rng = colRng(columnNames()[col].c_str());
    std::vector<int> weights = vocab.weights;
    if (weights.empty()) weights.assign(vocab.words.size(), 1);
    const std::vector<int> pool = weightedPool(n, weights, rng);
    for (std::size_t i = 0; i < n; ++i) cols[col].push_back(Cell::text(vocab.words[pool[i]]));
  };
  fillVocab(13, kStates);
  fillVocab(14, kProductSize);
  fillVocab(15, kUsageBand);
  fillVocab(17, kForks);
  fillVocab(18, kPadType);
  fillVocab(19, kMotionControl);
  fillVocab(20, kStick);
  fillVocab(21, kTransmission);
  fillVocab(22, kYesNoNone);
  fillVocab(23, kYesNoNone);
  fillVocab(25, kEnclosureType);
  fillVocab(27, kHydraulics);
  fillVocab(28, kYesNone);
  fillVocab(29, kRipper);
  fillVocab(30, kYesNone);
  fillVocab(31, kTipControl);
  fillVocab(32, kTireSize);
  fillVocab(33, kCoupler);
  fillVocab(34, kYesNoNone);
  fillVocab(35, kYesNoNone);
  fillVocab(36, kHydraulicsFlow);
  fillVocab(37, kTrackType);
  fillVocab(40, kCoupler);
  fillVocab(41, kYesNoNone);
  fillVocab(42, kGrouserType);
  fillVocab(43, kYesNone);
  fillVocab(44, kBladeType);
  fillVocab(45, kTravelControls);
  fillVocab(46, kDifferential);
  fillVocab(47, kSteering);

  auto fillUniform = [&](std::size_t col, double lo, double hi, std::size_t wantBuckets) {
    std::mt19937_64 rng = colRng(columnNames()[col].c_str());
    const std::size_t b = buckets(wantBuckets);
    const double step = (hi - lo) / static_cast<double>(b);
    for (std::size_t i = 0; i < n; ++i) cols[col].push_back(Cell::number(lo + step * static_cast<double>(pick(rng, b + 1))));
  };
  auto fillNormal = [&](std::size_t col, double mean, double sd, std::size_t wantBuckets) {
    std::mt19937_64 rng = colRng(columnNames()[col].c_str());
    const std::size_t b = buckets(wantBuckets);
    const double lo = mean - 2.7 * sd;
    const double step = (5.4 * sd) / static_cast<double>(b);
    for (std::size_t i = 0; i < n; ++i)
      cols[col].push_back(Cell::number(snapTo(mean + sd * truncatedZ(rng, 2.7), lo, step)));
  };
  auto fillSkewed = [&](std::size_t col, double lo, double span, std::size_t wantBuckets) {
    std::mt19937_64 rng = colRng(columnNames()[col].c_str());
    const std::size_t b = buckets(wantBuckets);
    const double step = span / static_cast<double>(b);
    for (std::size_t i = 0; i < n; ++i)
      cols[col].push_back(Cell::number(snapTo(lo + span * std::pow(unit(rng), 2.0), lo, step)));
  };

  fillUniform(24, 8.0, 22.0, 60);        // Blade_Span
  fillNormal(26, 180.0, 55.0, 200);      // Engine_Horsepower
  fillUniform(38, 400.0, 900.0, 100);    // Undercarriage_Pad
  fillNormal(39, 3.4, 0.7, 80);          // Stick_Length
  fillSkewed(48, 0.0, 9000.0, 150);      // Machine_Usage
  fillUniform(49, 0.0, 20000.0, 200);    // Frame_Hours
  fillNormal(50, 5000.0, 1500.0, 200);   // Blade_Hours
  fillSkewed(51, 0.0, 30000.0, 200);     // Engine_Hours
  fillNormal(52, 60000.0, 18000.0, 250); // Odometer_Reading

  Table table(columnNames());
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Cell> row;
    row.reserve(cols.size());
    for (auto& c : cols) row.push_back(std::move(c[i]));
    table.appendRow(std::move(row));
  }
  return table;
}

std::size_t InjectionSpec::total() const {
  return duplicates + missing + outliers + typoEntry + typoUpper + typoLower + logicWrongCategory +
         logicIncoherentPair;
}

InjectionSpec InjectionSpec::scaled(std::size_t rows) {
  auto at = [&](double per100k) {
    return static_cast<std::size_t>(std::llround(per100k * static_cast<double>(rows) / 100000.0));
  };
  InjectionSpec spec;
  spec.duplicates = at(20);
  spec.missing = at(161);
  spec.outliers = at(200);
  spec.typoEntry = at(100);
  spec.typoUpper = at(50);
  spec.typoLower = at(50);
  spec.logicWrongCategory = at(150);
  spec.logicIncoherentPair = at(300);
  return spec;
}

InjectionSpec InjectionSpec::fromJson(const nlohmann::ordered_json& j) {
  InjectionSpec spec;
  spec.duplicates = j.value("duplicates", 0u);
  spec.missing = j.value("missing", 0u);
  spec.outliers = j.value("outliers", 0u);
  spec.typoEntry = j.value("typo_entry", 0u);
  spec.typoUpper = j.value("typo_upper", 0u);
  spec.typoLower = j.value("typo_lower", 0u);
  spec.logicWrongCategory = j.value("logic_wrong_category", 0u);
  spec.logicIncoherentPair = j.value("logic_incoherent_pair", 0u);
  return spec;
}

nlohmann::ordered_json InjectionSpec::toJson() const {
  return {{"duplicates", duplicates},
          {"missing", missing},
          {"outliers", outliers},
          {"typo_entry", typoEntry},
          {"typo_upper", typoUpper},
          {"typo_lower", typoLower},
          {"logic_wrong_category", logicWrongCategory},
          {"logic_incoherent_pair", logicIncoherentPair}};
}

const char* truthCategoryName(TruthCategory c) {
  switch (c) {
    case TruthCategory::Duplicate: return "duplicates";
    case TruthCategory::Missing: return "missing";
    case TruthCategory::Outlier: return "outliers";
    case TruthCategory::Typo: return "typos";
    case TruthCategory::Logic: return "logic";
  }
  return "unknown";
}

namespace {

// Typo-eligible columns: purely textual vocabularies.
const std::vector<std::size_t>& textualColumns() {
  static const std::vector<std::size_t> kCols = {10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23,
                                                 25, 27, 28, 29, 30, 31, 33, 34, 35, 36, 37, 40, 41, 42,
                                                 43, 44, 45, 46, 47};
  return kCols;
}

const std::vector<std::size_t>& numericTargetColumns() {
  static const std::vector<std::size_t> kCols = {4, 5, 24, 26, 38, 39, 48, 49, 50, 51, 52};
  return kCols;
}

struct ColumnStats {
  double mean = 0.0;
  double sd = 0.0;
};

ColumnStats presentStats(const Table& t, std::size_t col) {
  double sum = 0.0, sq = 0.0;
  std::size_t k = 0;
  for (std::size_t r = 0; r < t.rowCount(); ++r) {
    const Cell& c = t.at(r, col);
    if (!c.isNumber()) continue;
    sum += c.asNumber();
    sq += c.asNumber() * c.asNumber();
    ++k;
  }
  ColumnStats s;
  if (k == 0) return s;
  s.mean = sum / static_cast<double>(k);
  const double var = sq / static_cast<double>(k) - s.mean * s.mean;
  s.sd = var > 0.0 ? std::sqrt(var) : 0.0;
  return s;
}

// One random edit that keeps the first two characters, so the variant sorts
// beside its source value.
std::string editedVariant(const std::string& word, std::mt19937_64& rng) {
  std::string v = word;
  const std::size_t len = v.size();
  switch (pick(rng, 4)) {
    case 0: {  // substitution
      const std::size_t p = 2 + pick(rng, len - 2);
      char c = static_cast<char>('a' + pick(rng, 26));
      if (c == v[p]) c = c == 'z' ? 'a' : static_cast<char>(c + 1);
      v[p] = c;
      break;
    }
    case 1: {  // deletion
      v.erase(2 + pick(rng, len - 2), 1);
      break;
    }
    case 2: {  // insertion
      v.insert(2 + pick(rng, len - 1), 1, static_cast<char>('a' + pick(rng, 26)));
      break;
    }
    default: {  // adjacent transposition
      std::size_t p = 2 + pick(rng, len - 3 + 1);
      if (p + 1 >= len) p = len - 2;
      if (v[p] == v[p + 1]) {
        char c = static_cast<char>('a' + pick(rng, 26));
        if (c == v[p]) c = c == 'z' ? 'a' : static_cast<char>(c + 1);
        v[p] = c;
      } else {
        std::swap(v[p], v[p + 1]);
      }
      break;
    }
  }
  return v;
}

}  // namespace

InjectionResult injectErrors(const Table& clean, const InjectionSpec& spec, std::uint64_t seed) {
  InjectionResult result;
  result.corrupted = clean;
  Table& t = result.corrupted;
  GroundTruth& truth = result.truth;
  const std::size_t n = t.rowCount();
  if (spec.total() > 0 && n < 100) throw ConfigError("table too small for injection");

  std::mt19937_64 rng = makeRng(deriveSeed(seed, "bench", "inject"));
  std::set<std::pair<std::size_t, std::size_t>> usedCells;  // (row, col)
  std::set<std::size_t> touchedRows;

  auto claimCell = [&](std::size_t row, std::size_t col) {
    if (!usedCells.insert({row, col}).second) return false;
    touchedRows.insert(row);
    return true;
  };
  auto record = [&](std::size_t row, std::size_t col, TruthCategory cat, const std::string& original) {
    truth.entries.push_back({t.rowId(row), t.attributeName(col), cat, original});
  };

  // ---- missing cells, anywhere
  for (std::size_t k = 0; k < spec.missing;) {
    const std::size_t row = pick(rng, n);
    const std::size_t col = pick(rng, t.columnCount());
    if (t.at(row, col).isMissing() || !claimCell(row, col)) continue;
    record(row, col, TruthCategory::Missing, t.at(row, col).display());
    t.at(row, col) = Cell::missing();
    ++k;
  }

  // ---- numeric outliers at 8..10 sigma, spread over the measurement columns
  {
    std::map<std::size_t, ColumnStats> stats;
    for (std::size_t col : numericTargetColumns()) stats[col] = presentStats(t, col);
    for (std::size_t k = 0; k < spec.outliers;) {
      const std::size_t col = numericTargetColumns()[k % numericTargetColumns().size()];
      const std::size_t row = pick(rng, n);
      if (!t.at(row, col).isNumber() || !claimCell(row, col)) continue;
      const ColumnStats& s = stats[col];
      const double z = 8.0 + 2.0 * unit(rng);
      const double sign = (rng() & 1) ? 1.0 : -1.0;
      record(row, col, TruthCategory::Outlier, t.at(row, col).display());
      t.at(row, col) = Cell::number(s.mean + sign * z * s.sd);
      ++k;
    }
  }

  // ---- typos: one edit, or a case flip; corrupted values must not collide
  // ---- with real vocabulary and must sort next to their source
  {
    // Real vocabulary plus every variant injected so far: a new variant must
    // sort directly beside its source within this set, otherwise one variant
    // can wedge between another and its source and break the jump chain.
    std::map<std::size_t, std::set<std::string>> knownFolded;
    std::map<std::size_t, std::unordered_set<std::string>> realFolded;
    for (std::size_t col : textualColumns()) {
      std::set<std::string>& folded = knownFolded[col];
      for (std::size_t r = 0; r < n; ++r) {
        if (t.at(r, col).isText()) folded.insert(asciiFold(t.at(r, col).asText()));
      }
      realFolded[col] = std::unordered_set<std::string>(folded.begin(), folded.end());
    }

    auto sortsBesideSource = [&](std::size_t col, const std::string& foldedVariant, const std::string& foldedSource) {
      const auto& known = knownFolded[col];
      const auto it = known.lower_bound(foldedVariant);
      if (it != known.end() && *it == foldedSource) return true;
      if (it != known.begin() && *std::prev(it) == foldedSource) return true;
      return false;
    };

    std::size_t attempts = 0;
    const std::size_t attemptCap = 1000 * (spec.typoEntry + 1);
    for (std::size_t k = 0; k < spec.typoEntry;) {
      if (++attempts > attemptCap) throw ConfigError("could not place the requested typo corruptions");
      const std::size_t col = textualColumns()[pick(rng, textualColumns().size())];
      const std::size_t row = pick(rng, n);
      const Cell& cell = t.at(row, col);
      if (!cell.isText() || cell.asText().size() < 4) continue;
      if (usedCells.count({row, col})) continue;
      const std::string original = cell.asText();
      const std::string foldedSource = asciiFold(original);
      std::string variant;
      bool ok = false;
      for (int attempt = 0; attempt < 10 && !ok; ++attempt) {
        variant = editedVariant(original, rng);
        const std::string foldedVariant = asciiFold(variant);
        ok = realFolded[col].count(foldedVariant) == 0 && sortsBesideSource(col, foldedVariant, foldedSource) &&
             dls(foldedVariant, foldedSource) >= 0.7;
      }
      if (!ok) continue;  // try another cell
      claimCell(row, col);
      record(row, col, TruthCategory::Typo, original);
      knownFolded[col].insert(asciiFold(variant));
      t.at(row, col) = Cell::text(variant);
      ++k;
    }

    auto caseFlip = [&](bool upper, std::size_t& k, std::size_t want) {
      while (k < want) {
        const std::size_t col = textualColumns()[pick(rng, textualColumns().size())];
        const std::size_t row = pick(rng, n);
        const Cell& cell = t.at(row, col);
        if (!cell.isText() || usedCells.count({row, col})) continue;
        const std::string original = cell.asText();
        std::string variant = original;
        for (char& c : variant) {
          if (upper)
            c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
          else
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
        if (variant == original) continue;
        claimCell(row, col);
        record(row, col, TruthCategory::Typo, original);
        t.at(row, col) = Cell::text(variant);
        ++k;
      }
    };
    std::size_t upperDone = 0, lowerDone = 0;
    caseFlip(true, upperDone, spec.typoUpper);
    caseFlip(false, lowerDone, spec.typoLower);
  }

  // ---- logic: wrong product group description, spread over the groups
  {
    const std::size_t groupCol = 11, descCol = 12;
    for (std::size_t k = 0; k < spec.logicWrongCategory;) {
      const std::string wantGroup = kGroupCodes.words[k % kGroupCodes.words.size()];
      const std::size_t row = pick(rng, n);
      if (!t.at(row, groupCol).isText() || t.at(row, groupCol).asText() != wantGroup) continue;
      if (usedCells.count({row, descCol}) || usedCells.count({row, groupCol})) continue;
      std::size_t g = 0;
      while (kGroupCodes.words[g] != wantGroup) ++g;
      std::size_t other = pick(rng, kGroupDescs.words.size() - 1);
      if (other >= g) ++other;
      claimCell(row, descCol);
      record(row, descCol, TruthCategory::Logic, t.at(row, descCol).display());
      t.at(row, descCol) = Cell::text(kGroupDescs.words[other]);
      ++k;
    }
  }

  // ---- logic: enclosure incompatible with the machine model, one model at
  // ---- a time so each model rule stays above the confidence floor
  {
    const ModelUniverse models = makeModels(seed);
    const std::size_t modelCol = 8, enclosureCol = 16;
    for (std::size_t k = 0; k < spec.logicIncoherentPair;) {
      const std::string wantModel = models.names[k % kModelCount];
      const std::size_t row = pick(rng, n);
      if (!t.at(row, modelCol).isText() || t.at(row, modelCol).asText() != wantModel) continue;
      if (usedCells.count({row, enclosureCol}) || usedCells.count({row, modelCol})) continue;
      const std::string current = t.at(row, enclosureCol).display();
      std::size_t other = pick(rng, kEnclosures.words.size());
      while (kEnclosures.words[other] == current) other = (other + 1) % kEnclosures.words.size();
      claimCell(row, enclosureCol);
      record(row, enclosureCol, TruthCategory::Logic, current);
      t.at(row, enclosureCol) = Cell::text(kEnclosures.words[other]);
      ++k;
    }
  }

  // ---- duplicates: append copies of rows that received no other error
  {
    std::set<std::size_t> sources;
    for (std::size_t k = 0; k < spec.duplicates;) {
      const std::size_t row = pick(rng, n);
      if (touchedRows.count(row) || sources.count(row)) continue;
      sources.insert(row);
      std::vector<Cell> copy;
      copy.reserve(t.columnCount());
      for (std::size_t c = 0; c < t.columnCount(); ++c) copy.push_back(t.at(row, c));
      const std::int64_t newId = t.appendRow(std::move(copy));
      truth.entries.push_back({newId, "", TruthCategory::Duplicate, ""});
      ++k;
    }
  }

  return result;
}

namespace {

bool compatibleWith(Category finding, TruthCategory truth) {
  switch (truth) {
    case TruthCategory::Duplicate: return finding == Category::Redundancy;
    case TruthCategory::Missing: return finding == Category::Absence || finding == Category::Logic;
    case TruthCategory::Outlier: return finding == Category::Outlier;
    case TruthCategory::Typo: return finding == Category::Typographical;
    case TruthCategory::Logic: return finding == Category::Logic;
  }
  return false;
}

TruthCategory bucketOf(Category c) {
  switch (c) {
    case Category::Redundancy: return TruthCategory::Duplicate;
    case Category::Absence: return TruthCategory::Missing;
    case Category::Outlier: return TruthCategory::Outlier;
    case Category::Typographical: return TruthCategory::Typo;
    case Category::Logic: return TruthCategory::Logic;
  }
  return TruthCategory::Missing;
}

void finishMetrics(CategoryMetrics& m) {
  m.recall = m.truthCount == 0 ? 1.0 : static_cast<double>(m.matched) / static_cast<double>(m.truthCount);
  m.precision =
      m.findingCount == 0 ? 1.0 : static_cast<double>(m.findingCount - m.spurious) / static_cast<double>(m.findingCount);
  m.f1 = (m.precision + m.recall) > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
}

}  // namespace

nlohmann::ordered_json Evaluation::toJson() const {
  auto metricsJson = [](const CategoryMetrics& m) {
    return nlohmann::ordered_json{{"truth", m.truthCount},   {"matched", m.matched}, {"findings", m.findingCount},
                                  {"spurious", m.spurious},  {"recall", m.recall},   {"precision", m.precision},
                                  {"f1", m.f1}};
  };
  nlohmann::ordered_json j;
  for (const auto& [name, metrics] : byCategory) j[name] = metricsJson(metrics);
  j["overall"] = metricsJson(overall);
  return j;
}

Evaluation evaluate(const std::vector<Finding>& findings, const GroundTruth& truth) {
  Evaluation eval;
  for (int c = 0; c < 5; ++c) eval.byCategory[truthCategoryName(static_cast<TruthCategory>(c))] = {};

  std::map<std::int64_t, std::vector<std::size_t>> rowTruth;  // duplicates
  std::map<std::pair<std::int64_t, std::string>, std::vector<std::size_t>> cellTruth;
  for (std::size_t i = 0; i < truth.entries.size(); ++i) {
    const TruthEntry& e = truth.entries[i];
    eval.byCategory[truthCategoryName(e.category)].truthCount++;
    if (e.column.empty())
      rowTruth[e.row].push_back(i);
    else
      cellTruth[{e.row, e.column}].push_back(i);
  }

  std::vector<bool> truthMatched(truth.entries.size(), false);
  for (const Finding& f : findings) {
    bool matched = false;
    if (f.category == Category::Redundancy) {
      auto it = rowTruth.find(f.row);
      if (it != rowTruth.end()) {
        for (std::size_t i : it->second) {
          truthMatched[i] = true;
          matched = true;
        }
      }
    }
    for (const std::string& col : f.columns) {
      auto it = cellTruth.find({f.row, col});
      if (it == cellTruth.end()) continue;
      for (std::size_t i : it->second) {
        if (!compatibleWith(f.category, truth.entries[i].category)) continue;
        truthMatched[i] = true;
        matched = true;
      }
    }
    CategoryMetrics& bucket = eval.byCategory[truthCategoryName(bucketOf(f.category))];
    bucket.findingCount++;
    if (!matched) bucket.spurious++;
  }

  for (std::size_t i = 0; i < truth.entries.size(); ++i) {
    if (truthMatched[i]) eval.byCategory[truthCategoryName(truth.entries[i].category)].matched++;
  }

  for (auto& [name, metrics] : eval.byCategory) {
    eval.overall.truthCount += metrics.truthCount;
    eval.overall.matched += metrics.matched;
    eval.overall.findingCount += metrics.findingCount;
    eval.overall.spurious += metrics.spurious;
    finishMetrics(metrics);
  }
  finishMetrics(eval.overall);
  return eval;
}

}  // namespace dq
