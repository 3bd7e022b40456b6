#include "brownsim/core/particles.hpp"

namespace brownsim {

ParticleSystem::ParticleSystem(PeriodicBox box, std::size_t n)
    : pos(n), image(n), pos_prev(n), image_prev(n), type_of(n), alpha(n), mu(n), force(n), box_(box) {}

void ParticleSystem::save_prev() {
  pos_prev = pos;
  image_prev = image;
}

void ParticleSystem::restore_prev() {
  pos = pos_prev;
  image = image_prev;
}

}  // namespace brownsim
