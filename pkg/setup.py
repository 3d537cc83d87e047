import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="backbone",
    version="0.1.0",
    description="Structure-preserving edge sparsification of complex networks.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["tests"]),
    install_requires=open("requirements.txt", "r").readlines(),
    extras_require={"test": ["pytest"]},
    entry_points={"console_scripts": ["backbone=backbone.cli:main"]},
    python_requires=">=3.8",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
)
