// Published flux (a_l) and smoothness-indicator (b_l) coefficients for the
// 29 candidate stencils, entered as written (fractions are not reduced).

#include "enomr/coeff.hpp"

namespace enomr {

namespace {

struct RawEntry {
  int m;
  int n;
  const char* flux;
  const char* indicator;
};

// Entries are space separated, l = -m..n.
constexpr RawEntry kRawTables[] = {
    {8, 8,
     "56/12252240 -1015/12252240 8777/12252240 -48343/12252240 191561/12252240 -588127/12252240 1491041/12252240 -3409855/12252240 8842385/12252240 7481025/12252240 -2320767/12252240 797985/12252240 -241599/12252240 58281/12252240 -10263/12252240 1161/12252240 -63/12252240",
     "1 -16 120 -560 1820 -4368 8008 -11440 12870 -11440 8008 -4368 1820 -560 120 -16 1"},
    {7, 8,
     "-7/720720 121/720720 -999/720720 5273/720720 -20207/720720 61329/720720 -162895/720720 477745/720720 477745/720720 -162895/720720 61329/720720 -20207/720720 5273/720720 -999/720720 121/720720 -7/720720",
     "-1 15 -105 455 -1365 3003 -5005 6435 -6435 5005 -3003 1365 -455 105 -15 1"},
    {8, 7,
     "7/720720 -119/720720 961/720720 -4919/720720 18013/720720 -50783/720720 117385/720720 -242975/720720 567835/720720 397665/720720 -106839/720720 30753/720720 -7467/720720 1353/720720 -159/720720 9/720720",
     "-1 15 -105 455 -1365 3003 -5005 6435 -6435 5005 -3003 1365 -455 105 -15 1"},
    {7, 7,
     "-7/360360 113/360360 -867/360360 4229/360360 -14881/360360 41175/360360 -98965/360360 261395/360360 216350/360360 -63930/360360 20154/360360 -5326/360360 1044/360360 -132/360360 8/360360",
     "1 -14 91 -364 1001 -2002 3003 -3423 3003 -2002 1001 -364 91 -14 1"},
    {8, 6,
     "8/360360 -127/360360 953/360360 -4507/360360 15149/360360 -38905/360360 81215/360360 -150445/360360 312875/360360 176310/360360 -39906/360360 9234/360360 -1686/360360 204/360360 -12/360360",
     "1 -14 91 -364 1001 -2002 3003 -3423 3003 -2002 1001 -364 91 -14 1"},
    {6, 7,
     "15/360360 -230/360360 1681/360360 -7874/360360 27161/360360 -77944/360360 237371/360360 237371/360360 -77944/360360 27161/360360 -7874/360360 1681/360360 -230/360360 15/360360",
     "-1 13 -78 286 -715 1287 -1716 1716 -1287 715 -286 78 -13 1"},
    {7, 6,
     "-15/360360 225/360360 -1595/360360 7141/360360 -22889/360360 57191/360360 -122989/360360 288851/360360 192326/360360 -47914/360360 12146/360360 -2414/360360 316/360360 -20/360360",
     "-1 13 -78 286 -715 1287 -1716 1716 -1287 715 -286 78 -13 1"},
    {6, 6,
     "30/360360 -425/360360 2851/360360 -12164/360360 37886/360360 -97249/360360 263111/360360 211631/360360 -58639/360360 16436/360360 -3584/360360 511/360360 -35/360360",
     "1 -12 66 -220 495 -792 924 -792 495 -220 66 -12 1"},
    {7, 5,
     "-35/360360 485/360360 -3155/360360 12861/360360 -37189/360360 82931/360360 -157309/360360 323171/360360 166586/360360 -33614/360360 6426/360360 -854/360360 56/360360",
     "1 -12 66 -220 495 -792 924 -792 495 -220 66 -12 1"},
    {5, 6,
     "-5/27720 67/27720 -428/27720 1772/27720 -5653/27720 18107/27720 18107/27720 -5653/27720 1772/27720 -428/27720 67/27720 -5/27720",
     "-1 11 -55 165 -330 462 -462 330 -165 55 -11 1"},
    {6, 5,
     "5/27720 -65/27720 397/27720 -1528/27720 4247/27720 -9613/27720 22727/27720 14147/27720 -3178/27720 672/27720 -98/27720 7/27720",
     "-1 11 -55 165 -330 462 -462 330 -165 55 -11 1"},
    {5, 5,
     "-10/27720 122/27720 -703/27720 2597/27720 -7303/27720 20417/27720 15797/27720 -4003/27720 947/27720 -153/27720 12/27720",
     "1 -10 45 -120 210 -252 210 -120 45 -10 1"},
    {6, 4,
     "12/27720 -142/27720 782/27720 -2683/27720 6557/27720 -12847/27720 25961/27720 11837/27720 -2023/27720 287/27720 -21/27720",
     "1 -10 45 -120 210 -252 210 -120 45 -10 1"},
    {4, 5,
     "2/2520 -23/2520 127/2520 -473/2520 1627/2520 1627/2520 -473/2520 127/2520 -23/2520 2/2520",
     "-1 9 -36 84 -126 126 -84 36 -9 1"},
    {5, 4,
     "-2/2520 22/2520 -113/2520 367/2520 -893/2520 2131/2520 1207/2520 -233/2520 37/2520 -3/2520",
     "-1 9 -36 84 -126 126 -84 36 -9 1"},
    {4, 4,
     "4/2520 -41/2520 199/2520 -641/2520 1879/2520 1375/2520 -305/2520 55/2520 -5/2520",
     "1 -8 28 -56 70 -56 28 -8 1"},
    {5, 3,
     "-5/2520 49/2520 -221/2520 619/2520 -1271/2520 2509/2520 955/2520 -125/2520 10/2520",
     "1 -8 28 -56 70 -56 28 -8 1"},
    {3, 4,
     "-3/840 29/840 -139/840 533/840 533/840 -139/840 29/840 -3/840",
     "-1 7 -21 35 -35 21 -7 1"},
    {4, 3,
     "3/840 -27/840 113/840 -307/840 743/840 365/840 -55/840 5/840",
     "-1 7 -21 35 -35 21 -7 1"},
    {3, 3,
     "-3/420 25/420 -101/420 319/420 214/420 -38/420 4/420",
     "1 -6 15 -20 15 -6 1"},
    {2, 3,
     "1/60 -8/60 37/60 37/60 -8/60 1/60",
     "-1 5 -10 10 -5 1"},
    {3, 2,
     "-1/60 7/60 -23/60 57/60 22/60 -2/60",
     "-1 5 -10 10 -5 1"},
    {2, 2,
     "2/60 -13/60 47/60 27/60 -3/60",
     "1 -4 6 -4 1"},
    {1, 2,
     "-1/12 7/12 7/12 -1/12",
     "-1 3 -3 1"},
    {2, 1,
     "1/12 -5/12 13/12 3/12",
     "-1 3 -3 1"},
    {1, 1,
     "-1/6 5/6 2/6",
     "1 -2 1"},
    {0, 1,
     "1/2 1/2",
     "-1 1"},
    {1, 0,
     "-1/2 3/2",
     "-1 1"},
    {0, 0,
     "1",
     "0"},
};

std::vector<Rational> parse_list(const char* text) {
  std::vector<Rational> out;
  std::string s(text);
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = s.find(' ', pos);
    if (end == std::string::npos) end = s.size();
    out.emplace_back(s.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

}  // namespace

const std::vector<ReferenceEntry>& reference_tables() {
  static const std::vector<ReferenceEntry> tables = [] {
    std::vector<ReferenceEntry> v;
    for (const auto& raw : kRawTables) {
      v.push_back({Stencil{raw.m, raw.n}, parse_list(raw.flux), parse_list(raw.indicator)});
    }
    return v;
  }();
  return tables;
}

}  // namespace enomr
