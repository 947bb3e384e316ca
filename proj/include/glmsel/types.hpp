#pragma once

#include <Eigen/Dense>

namespace glmsel {

using Index = Eigen::Index;

template <class Scalar>
using MatT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VecT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Mat = MatT<double>;
using Vec = VecT<double>;

using MatRef = Eigen::Ref<const Mat>;
using VecRef = Eigen::Ref<const Vec>;

}  // namespace glmsel
