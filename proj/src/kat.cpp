#include "pvc/kat.hpp"

namespace pvc::kat {

namespace {

constexpr BlockVector kDemoBlocks[] = {
    {1, 1,
     {7070, 6104, 8682, 7237, 8332, 9140, 1996, 11643, 5409},
     {2091, 743, 4301, 5009, 1368, 7716, 5591, 11473, 1776}},
    {1, 4,
     {9852, 816, 9929, 95, 2422, 2280, 8650, 4044, 7539},
     {12316, 3959, 6156, 3583, 10328, 2098, 3501, 9088, 2885}},
    {1, 7,
     {4171, 1751, 4337, 10936, 11535, 10650, 547, 182, 9881},
     {7689, 4239, 5828, 5263, 8886, 9820, 5472, 4400, 2861}},
    {1, 8,
     {1751, 4337, 3056, 11535, 10650, 7076, 182, 9881, 10737},
     {1061, 4391, 5128, 6176, 11482, 3979, 6066, 11551, 4568}},
    {4, 1,
     {1945, 6989, 1309, 3684, 4915, 5321, 302, 4670, 11984},
     {11300, 3341, 7052, 7249, 5177, 4347, 801, 5764, 8462}},
    {4, 4,
     {4032, 3631, 518, 6829, 9588, 2565, 2835, 5583, 4371},
     {96, 4894, 4155, 4708, 5942, 8662, 11152, 768, 8281}},
    {4, 7,
     {5978, 5946, 8760, 9481, 1340, 10505, 4705, 7215, 8037},
     {1796, 890, 3438, 4605, 726, 7304, 5448, 651, 7364}},
    {4, 8,
     {5946, 8760, 4217, 1340, 10505, 5612, 7215, 8037, 11825},
     {7523, 9859, 6705, 6295, 9137, 10118, 8883, 10389, 9857}},
    {6, 1,
     {302, 4670, 11984, 4103, 1276, 6541, 5675, 6057, 4162},
     {801, 5764, 8462, 745, 9199, 9299, 4470, 10753, 11194}},
    {6, 4,
     {2835, 5583, 4371, 119, 3752, 9736, 1042, 5193, 4012},
     {11152, 768, 9792, 2429, 10052, 11772, 7001, 11181, 5345}},
    {6, 7,
     {4705, 7215, 8037, 7518, 3435, 3192, 11330, 2214, 10338},
     {5448, 651, 7364, 10168, 2774, 3812, 6895, 3086, 1160}},
    {6, 8,
     {7215, 8037, 11825, 3435, 3192, 4134, 2214, 10338, 4332},
     {8883, 10389, 9857, 4255, 9242, 11281, 10980, 3436, 5553}},
};

}  // namespace

std::span<const BlockVector> demo_block_vectors() { return kDemoBlocks; }

}  // namespace pvc::kat
