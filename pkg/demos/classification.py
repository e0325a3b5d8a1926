"""End-to-end classification on a synthetic two-frequency task.

Run from the repository root:  python3 demos/classification.py
"""

import numpy as np

import minirocket as mr

# Two classes: one sine period per window versus two, with noise on top.
train = mr.synthesize("sine_freq", n_per_class=50, length=128, noise_sigma=0.2, seed=0)
test = mr.synthesize("sine_freq", n_per_class=50, length=128, noise_sigma=0.2, seed=1)
print(f"train {train.values.shape}, test {test.values.shape}, classes {np.unique(train.labels)}")

# Fit the transform on the training set only, then apply it to both splits.
params = mr.fit_biases(train, mr.plan_dilations(train.input_length), seed=0)
train_features = mr.transform(train, params)
test_features = mr.transform(test, params)
print(f"{train_features.shape[1]} features per example")

# A ridge classifier with leave-one-out selection of the regularization
# strength is the right tool at this size (and up to ~10k examples).
print("classifier for 100 examples:", mr.choose_classifier(len(train)))
model = mr.ridge_fit(train_features, train.labels)
accuracy = np.mean(mr.predict(model, test_features) == test.labels)
print(f"ridge test accuracy: {accuracy:.3f}")

# Everything round-trips through files, so fitting and prediction can live
# in different processes (the CLI does exactly this).
mr.save_parameters(params, "/tmp/demo-params.json")
mr.save_model(model, "/tmp/demo-model.json")
reloaded = mr.predict(mr.load_model("/tmp/demo-model.json"), test_features)
print("reloaded model agrees:", bool(np.all(reloaded == mr.predict(model, test_features))))

# For much larger training sets, the softmax path trains with Adam under a
# halve-on-plateau schedule, caching transformed features batch by batch.
# A smaller feature budget and an update cap keep this demo snappy.
big = mr.synthesize("sine_freq", n_per_class=2000, length=128, noise_sigma=0.5, seed=2)
small_params = mr.fit_biases(big, mr.plan_dilations(128, num_features=840), seed=0)
logistic = mr.logistic_fit(
    lambda batch: mr.transform(batch, small_params), big, seed=0, max_updates=2000
)
small_test = mr.transform(test, small_params)
big_accuracy = np.mean(mr.predict(logistic, small_test) == test.labels)
print(f"logistic test accuracy (trained on 4000 examples): {big_accuracy:.3f}")
