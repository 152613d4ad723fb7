#include <mutex>

#include "probative/service.hpp"

namespace probative::service {

void ModelStore::preload_fixtures() {
  std::unique_lock lock(mutex_);
  for (const auto& name : fixture_names()) {
    if (models_.count(name) != 0) continue;
    auto entry = std::make_shared<StoredModel>(StoredModel{name, load_fixture(name), true});
    models_.emplace(name, std::move(entry));
    order_.push_back(name);
  }
}

std::vector<std::shared_ptr<const StoredModel>> ModelStore::list() const {
  std::shared_lock lock(mutex_);
  std::vector<std::shared_ptr<const StoredModel>> out;
  out.reserve(order_.size());
  for (const auto& id : order_) out.push_back(models_.find(id)->second);
  return out;
}

std::shared_ptr<const StoredModel> ModelStore::get(std::string_view id) const {
  std::shared_lock lock(mutex_);
  auto it = models_.find(id);
  return it == models_.end() ? nullptr : it->second;
}

std::string ModelStore::add(ModelDocument document) {
  std::unique_lock lock(mutex_);
  std::string id;
  do {
    id = "m" + std::to_string(next_id_++);
  } while (models_.count(id) != 0);
  models_.emplace(id, std::make_shared<StoredModel>(StoredModel{id, std::move(document), false}));
  order_.push_back(id);
  return id;
}

RemoveResult ModelStore::remove(std::string_view id) {
  std::unique_lock lock(mutex_);
  auto it = models_.find(id);
  if (it == models_.end()) return RemoveResult::NotFound;
  if (it->second->fixture) return RemoveResult::ReadOnly;
  models_.erase(it);
  std::erase(order_, std::string(id));
  return RemoveResult::Removed;
}

}  // namespace probative::service
