from setuptools import setup

with open("README.md", "r") as fh:
    long_description = fh.read()

setup(
    name="modalwatch",
    # Versions should comply with PEP440.
    version="0.1.0",
    package_dir={"": "src"},
    description="Quantile forecasting and percentile-band anomaly detection for structural health monitoring",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT",
    include_package_data=True,
    python_requires=">=3.8",
    # List run-time dependencies here.  These will be installed by pip when
    # your project is installed.
    install_requires=[
        "inflection>=0.3,<0.6",
        "pendulum>=2.1,<3.1",
        "faker>=4.1.0,<14.0",
        "cleo>=0.8.0,<0.9",
        "python-dotenv>=0.14",
        "numpy>=1.20",
        "pandas>=1.5",
        "PyYAML>=5.4",
    ],
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
    keywords="structural health monitoring, anomaly detection, quantile regression, attention",
    # You can just specify the packages manually here if your project is
    # simple. Or you can use find_packages().
    packages=[
        "modalwatch",
        "modalwatch.anomaly",
        "modalwatch.collection",
        "modalwatch.commands",
        "modalwatch.factories",
        "modalwatch.forecaster",
        "modalwatch.helpers",
        "modalwatch.synthbench",
        "modalwatch.timeseries",
    ],
    # $ pip install -e .[test,plot]
    extras_require={
        "test": ["coverage", "pytest", "pytest-env"],
        "plot": ["matplotlib>=3.3"],
    },
    entry_points={
        "console_scripts": [
            "modalwatch = modalwatch.commands.Entry:application.run",
        ],
    },
)
