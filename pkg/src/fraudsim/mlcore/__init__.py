from .matrix import FeatureMatrix
from .preprocess import standardize, stratified_split, accuracy
from .pca import PcaModel, pca_fit, pca_transform, pca_top_features
from .kmeans import KMeansModel, kmeans_fit, elbow_select
from .tree import DecisionTreeClassifier
from .gbt import GradientBoostedTreesClassifier
from .mlp import PerceptronClassifier
from .serialize import model_to_json, model_from_json, save_model, load_model

__all__ = [
    "FeatureMatrix",
    "standardize",
    "stratified_split",
    "accuracy",
    "PcaModel",
    "pca_fit",
    "pca_transform",
    "pca_top_features",
    "KMeansModel",
    "kmeans_fit",
    "elbow_select",
    "DecisionTreeClassifier",
    "GradientBoostedTreesClassifier",
    "PerceptronClassifier",
    "model_to_json",
    "model_from_json",
    "save_model",
    "load_model",
]
